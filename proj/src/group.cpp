#include "barfill/group.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>
#include <queue>
#include <shared_mutex>
#include <unordered_map>

namespace barfill {

namespace detail {

struct GroupImpl {
    std::string spec;
    uint32_t order = 0;
    uint32_t identity = 0;
    std::optional<bool> abelian;
    std::vector<uint32_t> inverse;
    std::vector<uint32_t> table; /* order*order when materialized */

    virtual ~GroupImpl() = default;
    virtual uint32_t mul_raw(uint32_t a, uint32_t b) const = 0;
    virtual uint32_t inv_raw(uint32_t a) const = 0;
    virtual std::string label(uint32_t g) const = 0;
    virtual const char* backend() const = 0;

    uint32_t mul(uint32_t a, uint32_t b) const {
        return table.empty() ? mul_raw(a, b) : table[size_t(a) * order + b];
    }
    uint32_t inv(uint32_t a) const { return inverse[a]; }

    /* materialize small tables, precompute inverses, settle the abelian flag */
    static constexpr uint32_t kTableCap = 2048;
    void finalize() {
        if (order <= kTableCap && table.empty()) {
            table.resize(size_t(order) * order);
            for (uint32_t a = 0; a < order; ++a)
                for (uint32_t b = 0; b < order; ++b)
                    table[size_t(a) * order + b] = mul_raw(a, b);
        }
        inverse.resize(order);
        for (uint32_t a = 0; a < order; ++a)
            inverse[a] = inv_raw(a);
        if (!abelian.has_value() && !table.empty()) {
            bool ab = true;
            for (uint32_t a = 0; a < order && ab; ++a)
                for (uint32_t b = a + 1; b < order; ++b)
                    if (table[size_t(a) * order + b] != table[size_t(b) * order + a]) {
                        ab = false;
                        break;
                    }
            abelian = ab;
        }
    }
};

namespace {

struct CyclicImpl final : GroupImpl {
    uint32_t m;
    explicit CyclicImpl(uint32_t m_) : m(m_) {
        spec = "cyclic:" + std::to_string(m);
        order = m;
        identity = 0;
        abelian = true;
    }
    uint32_t mul_raw(uint32_t a, uint32_t b) const override { return (a + b) % m; }
    uint32_t inv_raw(uint32_t a) const override { return a == 0 ? 0 : m - a; }
    std::string label(uint32_t g) const override { return std::to_string(g); }
    const char* backend() const override { return "table"; }
};

/* permutations of {0..n-1}, indexed by lexicographic rank of the image row;
 * composition is (a*b)(x) = a(b(x)) */
struct SymImpl final : GroupImpl {
    uint32_t n;
    std::vector<uint32_t> fact;
    explicit SymImpl(uint32_t n_, uint32_t ord) : n(n_) {
        spec = "sym:" + std::to_string(n);
        order = ord;
        identity = 0;
        abelian = (n <= 2);
        fact.resize(n + 1);
        fact[0] = 1;
        for (uint32_t i = 1; i <= n; ++i)
            fact[i] = fact[i - 1] * i;
    }
    void unrank(uint32_t r, uint32_t* p) const {
        /* factorial number system; digits pick from the remaining symbols */
        uint32_t avail[12];
        for (uint32_t i = 0; i < n; ++i)
            avail[i] = i;
        uint32_t left = n;
        for (uint32_t i = 0; i < n; ++i) {
            uint32_t f = fact[left - 1];
            uint32_t d = r / f;
            r %= f;
            p[i] = avail[d];
            for (uint32_t j = d; j + 1 < left; ++j)
                avail[j] = avail[j + 1];
            --left;
        }
    }
    uint32_t rank(const uint32_t* p) const {
        uint32_t r = 0;
        for (uint32_t i = 0; i < n; ++i) {
            uint32_t smaller = 0;
            for (uint32_t j = i + 1; j < n; ++j)
                if (p[j] < p[i])
                    ++smaller;
            r += smaller * fact[n - 1 - i];
        }
        return r;
    }
    uint32_t mul_raw(uint32_t a, uint32_t b) const override {
        uint32_t pa[12], pb[12], pc[12];
        unrank(a, pa);
        unrank(b, pb);
        for (uint32_t i = 0; i < n; ++i)
            pc[i] = pa[pb[i]];
        return rank(pc);
    }
    uint32_t inv_raw(uint32_t a) const override {
        uint32_t pa[12], pc[12];
        unrank(a, pa);
        for (uint32_t i = 0; i < n; ++i)
            pc[pa[i]] = i;
        return rank(pc);
    }
    std::string label(uint32_t g) const override {
        uint32_t p[12];
        unrank(g, p);
        std::string s;
        for (uint32_t i = 0; i < n; ++i) {
            if (i)
                s += ',';
            s += std::to_string(p[i]);
        }
        return s;
    }
    const char* backend() const override { return "table"; }
};

/* element r^k s^f with index k + n*f; (k1,f1)(k2,f2) = (k1 + (-1)^f1 k2, f1^f2) */
struct DihedralImpl final : GroupImpl {
    uint32_t n;
    explicit DihedralImpl(uint32_t ord) : n(ord / 2) {
        spec = "dihedral:" + std::to_string(ord);
        order = ord;
        identity = 0;
        abelian = (ord <= 4);
    }
    uint32_t mul_raw(uint32_t a, uint32_t b) const override {
        uint32_t k1 = a % n, f1 = a / n, k2 = b % n, f2 = b / n;
        uint32_t k = f1 ? (k1 + n - k2) % n : (k1 + k2) % n;
        return k + n * (f1 ^ f2);
    }
    uint32_t inv_raw(uint32_t a) const override {
        uint32_t k = a % n, f = a / n;
        return f ? a : (k == 0 ? 0 : n - k);
    }
    std::string label(uint32_t g) const override {
        uint32_t k = g % n, f = g / n;
        return (f ? "sr" : "r") + std::to_string(k);
    }
    const char* backend() const override { return "table"; }
};

uint32_t fq_det(const Fq& F, std::vector<uint32_t> m, uint32_t dim) {
    uint32_t det = 1;
    for (uint32_t c = 0; c < dim; ++c) {
        uint32_t piv = dim;
        for (uint32_t r = c; r < dim; ++r)
            if (m[r * dim + c] != 0) {
                piv = r;
                break;
            }
        if (piv == dim)
            return 0;
        if (piv != c) {
            for (uint32_t j = 0; j < dim; ++j)
                std::swap(m[piv * dim + j], m[c * dim + j]);
            det = F.neg(det);
        }
        uint32_t d = m[c * dim + c];
        det = F.mul(det, d);
        uint32_t dinv = F.inv(d);
        for (uint32_t r = c + 1; r < dim; ++r) {
            uint32_t f = F.mul(m[r * dim + c], dinv);
            if (f == 0)
                continue;
            for (uint32_t j = c; j < dim; ++j)
                m[r * dim + j] = F.sub(m[r * dim + j], F.mul(f, m[c * dim + j]));
        }
    }
    return det;
}

/* Gauss-Jordan; input must be invertible */
std::vector<uint32_t> fq_inverse(const Fq& F, std::vector<uint32_t> m, uint32_t dim) {
    std::vector<uint32_t> inv(dim * dim, 0);
    for (uint32_t i = 0; i < dim; ++i)
        inv[i * dim + i] = 1;
    for (uint32_t c = 0; c < dim; ++c) {
        uint32_t piv = dim;
        for (uint32_t r = c; r < dim; ++r)
            if (m[r * dim + c] != 0) {
                piv = r;
                break;
            }
        if (piv == dim)
            throw PreconditionError("fq_inverse: singular matrix");
        if (piv != c)
            for (uint32_t j = 0; j < dim; ++j) {
                std::swap(m[piv * dim + j], m[c * dim + j]);
                std::swap(inv[piv * dim + j], inv[c * dim + j]);
            }
        uint32_t dinv = F.inv(m[c * dim + c]);
        for (uint32_t j = 0; j < dim; ++j) {
            m[c * dim + j] = F.mul(m[c * dim + j], dinv);
            inv[c * dim + j] = F.mul(inv[c * dim + j], dinv);
        }
        for (uint32_t r = 0; r < dim; ++r) {
            if (r == c)
                continue;
            uint32_t f = m[r * dim + c];
            if (f == 0)
                continue;
            for (uint32_t j = 0; j < dim; ++j) {
                m[r * dim + j] = F.sub(m[r * dim + j], F.mul(f, m[c * dim + j]));
                inv[r * dim + j] = F.sub(inv[r * dim + j], F.mul(f, inv[c * dim + j]));
            }
        }
    }
    return inv;
}

struct MatrixImpl final : GroupImpl {
    const Fq* F = nullptr;
    uint32_t dim = 0;
    std::vector<uint16_t> elems; /* order * dim * dim, lex ascending */

    static constexpr size_t kCacheCap = size_t(1) << 21;
    mutable std::shared_mutex cache_mu;
    mutable std::unordered_map<uint64_t, uint32_t> cache;

    const uint16_t* mat(uint32_t g) const { return elems.data() + size_t(g) * dim * dim; }

    uint32_t lookup(const uint16_t* m) const {
        size_t nn = size_t(dim) * dim;
        uint32_t lo = 0, hi = order;
        while (lo < hi) {
            uint32_t mid = lo + (hi - lo) / 2;
            const uint16_t* cand = mat(mid);
            int cmp = 0;
            for (size_t i = 0; i < nn; ++i)
                if (cand[i] != m[i]) {
                    cmp = cand[i] < m[i] ? -1 : 1;
                    break;
                }
            if (cmp == 0)
                return mid;
            if (cmp < 0)
                lo = mid + 1;
            else
                hi = mid;
        }
        throw InternalError("matrix group: product left the element set");
    }

    uint32_t mul_raw(uint32_t a, uint32_t b) const override {
        uint64_t key = (uint64_t(a) << 32) | b;
        {
            std::shared_lock<std::shared_mutex> lock(cache_mu);
            auto it = cache.find(key);
            if (it != cache.end())
                return it->second;
        }
        uint16_t prod[64];
        const uint16_t* ma = mat(a);
        const uint16_t* mb = mat(b);
        for (uint32_t i = 0; i < dim; ++i)
            for (uint32_t j = 0; j < dim; ++j) {
                uint32_t s = 0;
                for (uint32_t k = 0; k < dim; ++k)
                    s = F->add(s, F->mul(ma[i * dim + k], mb[k * dim + j]));
                prod[i * dim + j] = static_cast<uint16_t>(s);
            }
        uint32_t r = lookup(prod);
        {
            std::unique_lock<std::shared_mutex> lock(cache_mu);
            if (cache.size() < kCacheCap)
                cache.emplace(key, r);
        }
        return r;
    }

    uint32_t inv_raw(uint32_t a) const override {
        const uint16_t* ma = mat(a);
        std::vector<uint32_t> m(size_t(dim) * dim);
        for (size_t i = 0; i < m.size(); ++i)
            m[i] = ma[i];
        std::vector<uint32_t> iv = fq_inverse(*F, std::move(m), dim);
        uint16_t buf[64];
        for (size_t i = 0; i < iv.size(); ++i)
            buf[i] = static_cast<uint16_t>(iv[i]);
        return lookup(buf);
    }

    std::string label(uint32_t g) const override {
        const uint16_t* m = mat(g);
        std::string s;
        for (uint32_t i = 0; i < dim; ++i) {
            if (i)
                s += ';';
            for (uint32_t j = 0; j < dim; ++j) {
                if (j)
                    s += ',';
                s += std::to_string(m[i * dim + j]);
            }
        }
        return s;
    }
    const char* backend() const override { return "matrix"; }
};

struct ProductImpl final : GroupImpl {
    Group a, b;
    uint32_t ob = 0;
    ProductImpl(Group a_, Group b_) : a(std::move(a_)), b(std::move(b_)) {
        ob = b.order();
        spec = "product:" + a.spec() + "," + b.spec();
        order = a.order() * ob;
        identity = a.identity() * ob + b.identity();
        if (a.abelian().has_value() && b.abelian().has_value())
            abelian = *a.abelian() && *b.abelian();
    }
    uint32_t mul_raw(uint32_t x, uint32_t y) const override {
        return a.mul(x / ob, y / ob) * ob + b.mul(x % ob, y % ob);
    }
    uint32_t inv_raw(uint32_t x) const override {
        return a.inv(x / ob) * ob + b.inv(x % ob);
    }
    std::string label(uint32_t x) const override {
        return "(" + a.label(x / ob) + "|" + b.label(x % ob) + ")";
    }
    const char* backend() const override { return "product"; }
};

struct SubgroupImpl final : GroupImpl {
    Group parent;
    std::vector<uint32_t> elems; /* ascending parent indices */
    SubgroupImpl(Group p, std::vector<uint32_t> e, const std::string& sp)
        : parent(std::move(p)), elems(std::move(e)) {
        spec = sp;
        order = static_cast<uint32_t>(elems.size());
        identity = pos(parent.identity());
    }
    uint32_t pos(uint32_t parent_index) const {
        auto it = std::lower_bound(elems.begin(), elems.end(), parent_index);
        if (it == elems.end() || *it != parent_index)
            throw InternalError("subgroup: product left the element set");
        return static_cast<uint32_t>(it - elems.begin());
    }
    uint32_t mul_raw(uint32_t a, uint32_t b) const override {
        return pos(parent.mul(elems[a], elems[b]));
    }
    uint32_t inv_raw(uint32_t a) const override { return pos(parent.inv(elems[a])); }
    std::string label(uint32_t g) const override { return parent.label(elems[g]); }
    const char* backend() const override { return "subgroup"; }
};

struct QuotientImpl final : GroupImpl {
    Group parent;
    std::vector<uint32_t> reps;       /* coset index -> canonical parent element */
    std::vector<uint32_t> projection; /* parent index -> coset index */
    QuotientImpl(Group p, std::vector<uint32_t> r, std::vector<uint32_t> pr)
        : parent(std::move(p)), reps(std::move(r)), projection(std::move(pr)) {
        spec = "quot:" + parent.spec() + ":" + std::to_string(reps.size());
        order = static_cast<uint32_t>(reps.size());
        identity = projection[parent.identity()];
        abelian = true; /* only built as an abelianization */
    }
    uint32_t mul_raw(uint32_t a, uint32_t b) const override {
        return projection[parent.mul(reps[a], reps[b])];
    }
    uint32_t inv_raw(uint32_t a) const override { return projection[parent.inv(reps[a])]; }
    std::string label(uint32_t g) const override { return "[" + parent.label(reps[g]) + "]"; }
    const char* backend() const override { return "quotient"; }
};

uint64_t fnv64(const void* data, size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

void check_order_cap(uint64_t order, const RunConfig& cfg, const std::string& what) {
    if (order == 0)
        throw ParseError(what + ": empty group");
    if (order > cfg.order_cap)
        throw RefusedError(what + ": order " + std::to_string(order) + " exceeds order_cap " +
                           std::to_string(cfg.order_cap));
}

/* closed-form orders, with overflow saturation well above any cap */
uint64_t gl_order(uint32_t n, uint64_t q) {
    uint64_t qn = 1;
    for (uint32_t i = 0; i < n; ++i) {
        if (qn > (uint64_t(1) << 40))
            return uint64_t(-1);
        qn *= q;
    }
    uint64_t ord = 1, qi = 1;
    for (uint32_t i = 0; i < n; ++i) {
        uint64_t f = qn - qi;
        if (ord > (uint64_t(1) << 40) / (f ? f : 1))
            return uint64_t(-1);
        ord *= f;
        qi *= q;
    }
    return ord;
}

std::shared_ptr<GroupImpl> build_matrix_group(const std::string& kind, uint32_t n, uint32_t q,
                                              const RunConfig& cfg) {
    const Fq& F = Fq::get(q);
    if (n == 0 || n > 8)
        throw ParseError(kind + ": matrix dimension must be 1..8");
    uint64_t ord;
    if (kind == "gl")
        ord = gl_order(n, q);
    else if (kind == "sl")
        ord = gl_order(n, q) / (q - 1);
    else { /* torus */
        ord = 1;
        for (uint32_t i = 0; i < n; ++i) {
            ord *= q - 1;
            if (ord > (uint64_t(1) << 40))
                break;
        }
    }
    check_order_cap(ord, cfg, kind);

    auto impl = std::make_shared<MatrixImpl>();
    impl->F = &F;
    impl->dim = n;
    size_t nn = size_t(n) * n;
    impl->elems.reserve(ord * nn);

    if (kind == "torus") {
        /* lex order on the flattened matrix equals lex order on the diagonal */
        std::vector<uint32_t> d(n, 1);
        for (;;) {
            for (uint32_t i = 0; i < n; ++i)
                for (uint32_t j = 0; j < n; ++j)
                    impl->elems.push_back(i == j ? static_cast<uint16_t>(d[i]) : 0);
            uint32_t k = n;
            while (k > 0) {
                --k;
                if (++d[k] < q)
                    break;
                d[k] = 1;
                if (k == 0)
                    goto torus_done;
            }
        }
    torus_done:;
    } else {
        uint64_t total = 1;
        for (size_t i = 0; i < nn; ++i) {
            total *= q;
            if (total > 8000000)
                throw RefusedError(kind + ": enumeration space too large");
        }
        std::vector<uint32_t> m(nn, 0);
        std::vector<uint32_t> scratch(nn);
        for (;;) {
            scratch.assign(m.begin(), m.end());
            uint32_t det = fq_det(F, std::move(scratch), n);
            if (kind == "gl" ? det != 0 : det == 1)
                for (size_t i = 0; i < nn; ++i)
                    impl->elems.push_back(static_cast<uint16_t>(m[i]));
            /* lex odometer, last entry fastest */
            size_t k = nn;
            bool done = true;
            while (k > 0) {
                --k;
                if (++m[k] < q) {
                    done = false;
                    break;
                }
                m[k] = 0;
            }
            if (done)
                break;
        }
    }

    impl->order = static_cast<uint32_t>(impl->elems.size() / nn);
    if (impl->order != ord)
        throw InternalError(kind + ": enumerated order " + std::to_string(impl->order) +
                            " != closed form " + std::to_string(ord));
    impl->spec = kind + ":" + std::to_string(n) + ":" + std::to_string(q);
    impl->abelian = (n == 1) || kind == "torus" || (kind == "sl" && n == 1);
    if (kind == "sl" && n >= 2)
        impl->abelian = impl->order <= 2; /* sl:2:2 etc. are nonabelian; order<=2 safe */
    if (kind == "gl" && n >= 2)
        impl->abelian = false;

    std::vector<uint16_t> ident(nn, 0);
    for (uint32_t i = 0; i < n; ++i)
        ident[i * n + i] = 1;
    impl->identity = impl->lookup(ident.data());
    impl->finalize();
    return impl;
}

uint32_t parse_number(const std::string& s, size_t& pos) {
    size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9')
        ++pos;
    if (pos == start)
        throw ParseError("group spec: expected a number at offset " + std::to_string(start) +
                         " in '" + s + "'");
    if (pos - start > 9)
        throw ParseError("group spec: number too large in '" + s + "'");
    return static_cast<uint32_t>(std::stoul(s.substr(start, pos - start)));
}

void expect(const std::string& s, size_t& pos, char c) {
    if (pos >= s.size() || s[pos] != c)
        throw ParseError(std::string("group spec: expected '") + c + "' at offset " +
                         std::to_string(pos) + " in '" + s + "'");
    ++pos;
}

Group parse_spec(const std::string& s, size_t& pos, const RunConfig& cfg);

Group build_from_parts(const std::string& name, const std::string& s, size_t& pos,
                       const RunConfig& cfg) {
    if (name == "cyclic") {
        expect(s, pos, ':');
        uint32_t m = parse_number(s, pos);
        check_order_cap(m, cfg, "cyclic");
        auto impl = std::make_shared<CyclicImpl>(m);
        impl->finalize();
        return Group(impl);
    }
    if (name == "sym") {
        expect(s, pos, ':');
        uint32_t n = parse_number(s, pos);
        if (n == 0 || n > 12)
            throw ParseError("sym: degree must be 1..12");
        uint64_t ord = 1;
        for (uint32_t i = 2; i <= n; ++i)
            ord *= i;
        check_order_cap(ord, cfg, "sym");
        auto impl = std::make_shared<SymImpl>(n, static_cast<uint32_t>(ord));
        impl->finalize();
        return Group(impl);
    }
    if (name == "dihedral") {
        expect(s, pos, ':');
        uint32_t ord = parse_number(s, pos);
        if (ord < 2 || ord % 2 != 0)
            throw ParseError("dihedral: order must be even and >= 2");
        check_order_cap(ord, cfg, "dihedral");
        auto impl = std::make_shared<DihedralImpl>(ord);
        impl->finalize();
        return Group(impl);
    }
    if (name == "gl" || name == "sl" || name == "torus") {
        expect(s, pos, ':');
        uint32_t n = parse_number(s, pos);
        expect(s, pos, ':');
        uint32_t q = parse_number(s, pos);
        return Group(build_matrix_group(name, n, q, cfg));
    }
    if (name == "product") {
        expect(s, pos, ':');
        Group a = parse_spec(s, pos, cfg);
        expect(s, pos, ',');
        Group b = parse_spec(s, pos, cfg);
        return direct_product(a, b, cfg);
    }
    throw ParseError("group spec: unknown family '" + name + "'");
}

Group parse_spec(const std::string& s, size_t& pos, const RunConfig& cfg) {
    size_t start = pos;
    while (pos < s.size() && s[pos] >= 'a' && s[pos] <= 'z')
        ++pos;
    std::string name = s.substr(start, pos - start);
    if (name.empty())
        throw ParseError("group spec: expected a family name at offset " + std::to_string(start) +
                         " in '" + s + "'");
    return build_from_parts(name, s, pos, cfg);
}

} // namespace
} // namespace detail


const std::string& Group::spec() const { return impl_->spec; }
uint32_t Group::order() const { return impl_->order; }
uint32_t Group::identity() const { return impl_->identity; }
uint32_t Group::mul(uint32_t a, uint32_t b) const { return impl_->mul(a, b); }
uint32_t Group::inv(uint32_t a) const { return impl_->inv(a); }
std::string Group::label(uint32_t g) const { return impl_->label(g); }
std::optional<bool> Group::abelian() const { return impl_->abelian; }
std::string Group::backend_name() const { return impl_->backend(); }
bool Group::same_group(const Group& other) const {
    return impl_ == other.impl_ || (impl_ && other.impl_ && impl_->spec == other.impl_->spec);
}

bool Group::is_matrix_group() const {
    return dynamic_cast<const detail::MatrixImpl*>(impl_.get()) != nullptr;
}

static const detail::MatrixImpl& as_matrix(const detail::GroupImpl* impl) {
    auto* m = dynamic_cast<const detail::MatrixImpl*>(impl);
    if (!m)
        throw PreconditionError("operation requires a matrix-backend group");
    return *m;
}

const Fq& Group::field() const { return *as_matrix(impl_.get()).F; }
uint32_t Group::mat_dim() const { return as_matrix(impl_.get()).dim; }
std::span<const uint16_t> Group::matrix_of(uint32_t g) const {
    const auto& m = as_matrix(impl_.get());
    return {m.mat(g), size_t(m.dim) * m.dim};
}
std::optional<uint32_t> Group::index_of_matrix(std::span<const uint16_t> mt) const {
    const auto& m = as_matrix(impl_.get());
    if (mt.size() != size_t(m.dim) * m.dim)
        throw PreconditionError("index_of_matrix: wrong entry count");
    try {
        return m.lookup(mt.data());
    } catch (const InternalError&) {
        return std::nullopt;
    }
}
std::vector<uint32_t> Group::diagonal_elements() const {
    const auto& m = as_matrix(impl_.get());
    std::vector<uint32_t> out;
    for (uint32_t g = 0; g < m.order; ++g) {
        const uint16_t* e = m.mat(g);
        bool diag = true;
        for (uint32_t i = 0; i < m.dim && diag; ++i)
            for (uint32_t j = 0; j < m.dim; ++j)
                if (i != j && e[i * m.dim + j] != 0) {
                    diag = false;
                    break;
                }
        if (diag)
            out.push_back(g);
    }
    return out;
}

Group build_group(const std::string& spec, const RunConfig& cfg) {
    size_t pos = 0;
    Group g = detail::parse_spec(spec, pos, cfg);
    if (pos != spec.size())
        throw ParseError("group spec: trailing text at offset " + std::to_string(pos) + " in '" +
                         spec + "'");
    return g;
}

Group direct_product(const Group& a, const Group& b, const RunConfig& cfg) {
    uint64_t ord = uint64_t(a.order()) * b.order();
    detail::check_order_cap(ord, cfg, "product");
    auto impl = std::make_shared<detail::ProductImpl>(a, b);
    impl->finalize();
    return Group(impl);
}

/* commutator generating set, deduplicated */
static std::vector<uint32_t> commutator_set(const Group& g) {
    uint32_t n = g.order();
    std::vector<bool> seen(n, false);
    std::vector<uint32_t> set;
    for (uint32_t a = 0; a < n; ++a) {
        uint32_t ia = g.inv(a);
        for (uint32_t b = 0; b < n; ++b) {
            uint32_t c = g.mul(g.mul(a, b), g.mul(ia, g.inv(b)));
            if (!seen[c]) {
                seen[c] = true;
                set.push_back(c);
            }
        }
    }
    std::sort(set.begin(), set.end());
    return set;
}

/* BFS distance from the identity in the Cayley graph on the commutator set;
 * -1 marks elements outside the derived subgroup */
static std::vector<int32_t> commutator_distances(const Group& g) {
    std::vector<uint32_t> gens = commutator_set(g);
    std::vector<int32_t> dist(g.order(), -1);
    std::queue<uint32_t> bfs;
    dist[g.identity()] = 0;
    bfs.push(g.identity());
    while (!bfs.empty()) {
        uint32_t x = bfs.front();
        bfs.pop();
        for (uint32_t c : gens) {
            uint32_t y = g.mul(x, c);
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                bfs.push(y);
            }
        }
    }
    return dist;
}

std::vector<uint32_t> derived_subgroup(const Group& g) {
    std::vector<int32_t> dist = commutator_distances(g);
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < g.order(); ++i)
        if (dist[i] >= 0)
            out.push_back(i);
    return out;
}

CommutatorLength commutator_length(const Group& g, uint32_t elem) {
    if (elem >= g.order())
        throw PreconditionError("commutator_length: element out of range");
    std::vector<int32_t> dist = commutator_distances(g);
    CommutatorLength r;
    r.in_derived = dist[elem] >= 0;
    r.length = r.in_derived ? static_cast<uint32_t>(dist[elem]) : 0;
    return r;
}

Abelianization abelianization(const Group& g, const RunConfig& cfg) {
    if (g.abelian().value_or(false)) {
        Abelianization a;
        a.quotient = g;
        a.projection.resize(g.order());
        for (uint32_t i = 0; i < g.order(); ++i)
            a.projection[i] = i;
        return a;
    }
    std::vector<uint32_t> derived = derived_subgroup(g);
    uint32_t n = g.order();
    std::vector<uint32_t> proj(n, UINT32_MAX);
    std::vector<uint32_t> reps;
    for (uint32_t x = 0; x < n; ++x) {
        if (proj[x] != UINT32_MAX)
            continue;
        /* ascending scan: x is the least element of its coset */
        uint32_t id = static_cast<uint32_t>(reps.size());
        reps.push_back(x);
        for (uint32_t d : derived)
            proj[g.mul(x, d)] = id;
    }
    auto impl = std::make_shared<detail::QuotientImpl>(g, std::move(reps), std::move(proj));
    impl->finalize();
    (void)cfg;
    Abelianization a;
    a.quotient = Group(impl);
    a.projection = impl->projection;
    return a;
}

SubgroupEmbedding subgroup_embedding(const Group& g, const std::vector<uint32_t>& elements,
                                     const RunConfig& cfg) {
    std::vector<uint32_t> elems = elements;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.empty())
        throw PreconditionError("subgroup_embedding: empty element set");
    for (uint32_t e : elems)
        if (e >= g.order())
            throw PreconditionError("subgroup_embedding: element out of range");
    if (!std::binary_search(elems.begin(), elems.end(), g.identity()))
        throw PreconditionError("subgroup_embedding: identity missing");
    uint64_t pairs = uint64_t(elems.size()) * elems.size();
    if (pairs > 16000000)
        throw RefusedError("subgroup_embedding: closure check needs " + std::to_string(pairs) +
                           " products; refusing");
    for (uint32_t a : elems) {
        if (!std::binary_search(elems.begin(), elems.end(), g.inv(a)))
            throw PreconditionError("subgroup_embedding: not closed under inverse");
        for (uint32_t b : elems)
            if (!std::binary_search(elems.begin(), elems.end(), g.mul(a, b)))
                throw PreconditionError("subgroup_embedding: not closed under product");
    }
    uint64_t h = detail::fnv64(elems.data(), elems.size() * sizeof(uint32_t));
    char hex[17];
    snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    std::string spec = "sub:" + g.spec() + ":" + std::to_string(elems.size()) + ":" + hex;
    auto impl = std::make_shared<detail::SubgroupImpl>(g, elems, spec);
    impl->finalize();
    (void)cfg;
    SubgroupEmbedding se;
    se.subgroup = Group(impl);
    se.inclusion = std::move(elems);
    return se;
}

} // namespace barfill
