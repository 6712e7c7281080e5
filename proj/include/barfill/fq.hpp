#pragma once

/* Small finite fields GF(p^e).  An element is an integer code in 0..q-1 whose
 * base-p digits are the coefficients of its residue polynomial, digit i being
 * the coefficient of x^i.  For e >= 2 the modulus is the monic irreducible
 * polynomial of degree e whose non-leading coefficient code (same base-p
 * encoding) is smallest.  Arithmetic runs on log/antilog tables over a fixed
 * primitive element, so everything after construction is O(1) and the object
 * is immutable and safe to share between threads. */

#include <cstdint>
#include <vector>

#include "barfill/config.hpp"

namespace barfill {

class Fq {
public:
    /* Interned: one instance per q, built on first use.  Throws ParseError if
     * q is not a prime power or exceeds 65535. */
    static const Fq& get(uint32_t q);

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint32_t q() const { return q_; }

    /* c0..ce with ce == 1; for e == 1 this is [0, 1], i.e. the polynomial x */
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0)
            return 0;
        uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1)
            s -= q_ - 1;
        return exp_[s];
    }
    uint32_t inv(uint32_t a) const {
        if (a == 0)
            throw PreconditionError("Fq::inv(0)");
        uint32_t l = log_[a];
        return exp_[l == 0 ? 0 : q_ - 1 - l];
    }
    uint32_t pow(uint32_t a, int64_t k) const;

    /* smallest element code generating GF(q)^x */
    uint32_t primitive() const { return primitive_; }
    uint32_t mul_order(uint32_t a) const;

private:
    explicit Fq(uint32_t q);

    uint32_t p_ = 0, e_ = 0, q_ = 0;
    uint32_t primitive_ = 0;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> exp_;  /* exp_[i] = primitive^i, i in 0..q-2 */
    std::vector<uint32_t> log_;  /* inverse of exp_ on 1..q-1 */
};

} // namespace barfill
