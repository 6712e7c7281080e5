#include "barfill/fq.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace barfill {

namespace {

/* polynomial helpers used only during construction; coefficient vectors are
 * little-endian (index = degree) and always reduced mod p */

using Poly = std::vector<uint32_t>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, uint32_t p) {
    if (a.empty() || b.empty())
        return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    trim(c);
    return c;
}

/* a mod m, m monic */
Poly poly_mod(Poly a, const Poly& m, uint32_t p) {
    trim(a);
    while (a.size() >= m.size()) {
        uint32_t lead = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            uint32_t s = (lead * m[i]) % p;
            uint32_t& t = a[i + shift];
            t = (t + p - s) % p;
        }
        trim(a);
    }
    return a;
}

uint32_t poly_to_code(const Poly& f, uint32_t p) {
    uint32_t code = 0;
    for (size_t i = f.size(); i-- > 0;)
        code = code * p + f[i];
    return code;
}

Poly code_to_poly(uint32_t code, uint32_t p) {
    Poly f;
    while (code) {
        f.push_back(code % p);
        code /= p;
    }
    return f;
}

bool divides(const Poly& d, const Poly& f, uint32_t p) {
    return poly_mod(f, d, p).empty();
}

/* trial division by all monic polynomials of degree 1..deg(f)/2 */
bool irreducible(const Poly& f, uint32_t p) {
    uint32_t deg = static_cast<uint32_t>(f.size()) - 1;
    for (uint32_t d = 1; 2 * d <= deg; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i)
            count *= p;
        for (uint64_t k = 0; k < count; ++k) {
            Poly g = code_to_poly(static_cast<uint32_t>(k), p);
            g.resize(d + 1, 0);
            g[d] = 1;
            if (divides(g, f, p))
                return false;
        }
    }
    return true;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
    std::vector<uint32_t> fs;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    if (n > 1)
        fs.push_back(n);
    return fs;
}

} // namespace

Fq::Fq(uint32_t q) : q_(q) {
    if (q < 2 || q > 65535)
        throw ParseError("field size out of range: " + std::to_string(q));
    uint32_t n = q;
    uint32_t p = 0;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    if (p == 0)
        p = n;
    uint32_t e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    if (n != 1)
        throw ParseError(std::to_string(q) + " is not a prime power");
    p_ = p;
    e_ = e;

    if (e == 1) {
        modulus_ = {0, 1};
    } else {
        /* smallest non-leading coefficient code whose monic lift is irreducible */
        uint64_t total = 1;
        for (uint32_t i = 0; i < e; ++i)
            total *= p;
        for (uint64_t k = 0; k < total; ++k) {
            Poly f = code_to_poly(static_cast<uint32_t>(k), p);
            f.resize(e + 1, 0);
            f[e] = 1;
            if (irreducible(f, p)) {
                modulus_.assign(f.begin(), f.end());
                break;
            }
        }
        if (modulus_.empty())
            throw InternalError("no irreducible modulus found"); /* impossible */
    }

    Poly mod(modulus_.begin(), modulus_.end());
    auto mul_codes = [&](uint32_t a, uint32_t b) {
        Poly c = poly_mul(code_to_poly(a, p), code_to_poly(b, p), p);
        return poly_to_code(poly_mod(std::move(c), mod, p), p);
    };
    auto pow_codes = [&](uint32_t a, uint32_t k) {
        uint32_t r = 1;
        while (k) {
            if (k & 1)
                r = mul_codes(r, a);
            a = mul_codes(a, a);
            k >>= 1;
        }
        return r;
    };

    std::vector<uint32_t> fs = prime_factors(q - 1);
    for (uint32_t g = (q == 2) ? 1 : 2; g < q; ++g) {
        bool ok = true;
        for (uint32_t f : fs)
            if (pow_codes(g, (q - 1) / f) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            primitive_ = g;
            break;
        }
    }
    if (primitive_ == 0 && q > 2)
        throw InternalError("no primitive element found");
    if (q == 2)
        primitive_ = 1;

    exp_.resize(q - 1);
    log_.assign(q, 0);
    uint32_t x = 1;
    for (uint32_t i = 0; i + 1 < q; ++i) {
        exp_[i] = x;
        log_[x] = i;
        x = mul_codes(x, primitive_);
    }
    if (x != 1)
        throw InternalError("primitive element order mismatch");
}

const Fq& Fq::get(uint32_t q) {
    static std::mutex mu;
    static std::map<uint32_t, std::unique_ptr<Fq>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end())
        it = cache.emplace(q, std::unique_ptr<Fq>(new Fq(q))).first;
    return *it->second;
}

uint32_t Fq::add(uint32_t a, uint32_t b) const {
    if (e_ == 1)
        return (a + b) % p_;
    uint32_t r = 0, place = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        r += ((a % p_ + b % p_) % p_) * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return r;
}

uint32_t Fq::neg(uint32_t a) const {
    if (e_ == 1)
        return a == 0 ? 0 : p_ - a;
    uint32_t r = 0, place = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        uint32_t d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * place;
        a /= p_;
        place *= p_;
    }
    return r;
}

uint32_t Fq::pow(uint32_t a, int64_t k) const {
    if (a == 0) {
        if (k <= 0)
            throw PreconditionError("Fq::pow(0, k<=0)");
        return 0;
    }
    int64_t m = q_ - 1;
    int64_t idx = (static_cast<int64_t>(log_[a]) * (k % m)) % m;
    if (idx < 0)
        idx += m;
    return exp_[idx];
}

uint32_t Fq::mul_order(uint32_t a) const {
    if (a == 0)
        throw PreconditionError("Fq::mul_order(0)");
    uint32_t n = q_ - 1;
    uint32_t l = log_[a];
    if (l == 0)
        return 1;
    /* order = (q-1)/gcd(q-1, log a) */
    uint32_t x = n, y = l;
    while (y) {
        uint32_t t = x % y;
        x = y;
        y = t;
    }
    return n / x;
}

} // namespace barfill
