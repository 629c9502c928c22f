#include "bexsam/anf.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "bexsam/errors.hpp"

namespace bexsam {

namespace {

// sort and drop monomials that appear an even number of times
void normalize(std::vector<std::uint64_t>& ms) {
    std::sort(ms.begin(), ms.end());
    std::vector<std::uint64_t> out;
    out.reserve(ms.size());
    for (std::size_t i = 0; i < ms.size();) {
        std::size_t j = i;
        while (j < ms.size() && ms[j] == ms[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(ms[i]);
        i = j;
    }
    ms = std::move(out);
}

}  // namespace

AnfFunction::AnfFunction(std::vector<std::uint64_t> monomials)
    : monomials_(std::move(monomials)) {
    normalize(monomials_);
}

AnfFunction AnfFunction::constant(int value) {
    AnfFunction f;
    if (value != 0) f.monomials_.push_back(0);
    return f;
}

AnfFunction AnfFunction::variable(int index) {
    if (index < 0 || index > 63) throw InputError("variable index out of range");
    AnfFunction f;
    f.monomials_.push_back(std::uint64_t{1} << index);
    return f;
}

int AnfFunction::eval(std::uint64_t assignment) const noexcept {
    int acc = 0;
    for (std::uint64_t m : monomials_) acc ^= ((assignment & m) == m) ? 1 : 0;
    return acc;
}

int AnfFunction::eval_checked(std::uint64_t assignment, std::uint64_t mask) const {
    std::uint64_t need = support();
    if ((need & mask) != need)
        throw InputError("evaluation is missing a variable the function depends on");
    return eval(assignment);
}

std::uint64_t AnfFunction::support() const noexcept {
    std::uint64_t s = 0;
    for (std::uint64_t m : monomials_) s |= m;
    return s;
}

bool AnfFunction::depends_on(int index) const noexcept {
    if (index < 0 || index > 63) return false;
    return (support() >> index) & 1;
}

AnfFunction operator^(const AnfFunction& a, const AnfFunction& b) {
    std::vector<std::uint64_t> ms = a.monomials_;
    ms.insert(ms.end(), b.monomials_.begin(), b.monomials_.end());
    return AnfFunction(std::move(ms));
}

AnfFunction operator&(const AnfFunction& a, const AnfFunction& b) {
    std::vector<std::uint64_t> ms;
    ms.reserve(a.monomials_.size() * b.monomials_.size());
    for (std::uint64_t ma : a.monomials_)
        for (std::uint64_t mb : b.monomials_) ms.push_back(ma | mb);
    return AnfFunction(std::move(ms));
}

AnfFunction operator|(const AnfFunction& a, const AnfFunction& b) {
    return a ^ b ^ (a & b);
}

AnfFunction AnfFunction::operator~() const {
    return *this ^ AnfFunction::constant(1);
}

}  // namespace bexsam
