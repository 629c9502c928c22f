#pragma once

#include <cstdint>
#include <vector>

namespace bexsam {

// Boolean function in algebraic normal form: an XOR of AND-monomials.
// A monomial is a bitmask over variable indices 0..63; mask 0 is the
// constant-1 term. Monomials are kept sorted and unique (XOR cancels pairs),
// so equal functions compare equal. An empty list is the constant 0.
class AnfFunction {
public:
    AnfFunction() = default;
    explicit AnfFunction(std::vector<std::uint64_t> monomials);

    static AnfFunction constant(int value);
    static AnfFunction variable(int index);

    // assignment bit i = value of variable i
    int eval(std::uint64_t assignment) const noexcept;
    // throws InputError if a variable in the support is not covered by `mask`
    int eval_checked(std::uint64_t assignment, std::uint64_t mask) const;

    // union of all monomial masks (the variables the function reads)
    std::uint64_t support() const noexcept;
    bool depends_on(int index) const noexcept;
    bool is_constant_zero() const noexcept { return monomials_.empty(); }
    bool is_constant_one() const noexcept {
        return monomials_.size() == 1 && monomials_[0] == 0;
    }

    const std::vector<std::uint64_t>& monomials() const noexcept { return monomials_; }

    friend AnfFunction operator^(const AnfFunction& a, const AnfFunction& b);
    friend AnfFunction operator&(const AnfFunction& a, const AnfFunction& b);
    // a OR b == a ^ b ^ (a & b)
    friend AnfFunction operator|(const AnfFunction& a, const AnfFunction& b);
    AnfFunction operator~() const;

    bool operator==(const AnfFunction&) const = default;

private:
    std::vector<std::uint64_t> monomials_;
};

}  // namespace bexsam
