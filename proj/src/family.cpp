#include "barfill/family.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <thread>

#include "fill.hpp"

namespace barfill {

namespace {

bool prime_power(uint32_t q) {
    if (q < 2) return false;
    uint32_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (p * p > q) return true; /* q itself is prime */
    while (q % p == 0) q /= p;
    return q == 1;
}

void validate_labels(const GroupFamily& f) {
    std::set<std::string> seen;
    for (const FamilyMember& m : f.members)
        if (!seen.insert(m.label).second)
            throw PreconditionError("family: labels must be distinct");
}

void check_homomorphism(const Group& base, const Group& target, const Embedding& e) {
    if (e.size() != base.order())
        throw PreconditionError("diagonal_embed: embedding must map every base element");
    for (uint32_t x : e)
        if (x >= target.order())
            throw PreconditionError("diagonal_embed: image element out of range");
    for (uint32_t x = 0; x < base.order(); ++x)
        for (uint32_t y = 0; y < base.order(); ++y)
            if (e[base.mul(x, y)] != target.mul(e[x], e[y]))
                throw PreconditionError("diagonal_embed: map is not a homomorphism");
}

} // namespace

GroupFamily make_family(Session& s, const std::string& pattern, uint32_t q_lo, uint32_t q_hi,
                        uint32_t mod_filter, uint32_t n, uint32_t l) {
    size_t colon = pattern.find(':');
    std::string head = pattern.substr(0, colon);
    bool tail_ok = colon != std::string::npos && colon + 1 < pattern.size();
    for (size_t i = colon + 1; tail_ok && i < pattern.size(); ++i)
        tail_ok = std::isdigit(static_cast<unsigned char>(pattern[i])) != 0;
    if (!tail_ok || (head != "gl" && head != "sl" && head != "torus"))
        throw ParseError("family: pattern must be gl:<n>, sl:<n> or torus:<n>");

    GroupFamily f;
    f.n = n;
    f.l = l;
    for (uint32_t q = q_lo; q <= q_hi; ++q) {
        if (!prime_power(q)) continue;
        if (mod_filter >= 2 && q % mod_filter != 1) continue;
        FamilyMember m;
        m.label = std::to_string(q);
        m.spec = pattern + ":" + m.label;
        m.q = q;
        s.group(m.spec); /* build now so bad members fail before any run */
        f.members.push_back(std::move(m));
    }
    return f;
}

std::vector<Embedding> identity_embeddings(const Group& base, const GroupFamily& f) {
    Embedding id(base.order());
    for (uint32_t x = 0; x < base.order(); ++x) id[x] = x;
    return std::vector<Embedding>(f.members.size(), id);
}

std::vector<Embedding> cyclic_torus_embeddings(Session& s, const Group& base,
                                               const GroupFamily& f) {
    uint32_t m = base.order();
    std::vector<Embedding> out;
    for (const FamilyMember& mem : f.members) {
        Group g = s.group(mem.spec);
        if (!g.is_matrix_group() || g.mat_dim() != 1)
            throw PreconditionError("cyclic_torus_embeddings: members must be rank-1 tori");
        uint32_t ord = g.order();
        if (ord % m != 0)
            throw PreconditionError("cyclic_torus_embeddings: base order does not divide q-1");
        const Fq& F = g.field();
        uint32_t step = ord / m;
        Embedding e(m);
        for (uint32_t k = 0; k < m; ++k) {
            uint16_t code =
                static_cast<uint16_t>(F.pow(F.primitive(), int64_t(step) * int64_t(k)));
            auto idx = g.index_of_matrix(std::span<const uint16_t>(&code, 1));
            if (!idx) throw InternalError("cyclic_torus_embeddings: torus misses a power");
            e[k] = *idx;
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Chain> diagonal_embed(Session& s, const Group& base, const Chain& c,
                                  const GroupFamily& f, const std::vector<Embedding>& embs) {
    if (embs.size() != f.members.size())
        throw PreconditionError("diagonal_embed: one embedding per family index required");
    if (c.l != f.l)
        throw PreconditionError("diagonal_embed: chain modulus differs from the family");
    validate_labels(f);

    std::vector<Chain> out;
    out.reserve(f.members.size());
    for (size_t i = 0; i < f.members.size(); ++i) {
        Group target = s.group(f.members[i].spec);
        check_homomorphism(base, target, embs[i]);
        std::vector<std::pair<Rank, uint32_t>> terms;
        terms.reserve(c.terms.size());
        for (auto& [r, co] : c.terms) {
            std::vector<uint32_t> tup = tuple_of(base, c.n, r);
            for (uint32_t& x : tup) x = embs[i][x];
            terms.emplace_back(tuple_rank(target, tup), co);
        }
        out.push_back(make_chain(target, c.n, c.l, std::move(terms)));
    }
    return out;
}

Chain pull_back(const Group& base, const Embedding& emb, const Group& target,
                const Chain& image) {
    std::vector<std::optional<uint32_t>> inv(target.order());
    for (uint32_t k = 0; k < emb.size(); ++k) {
        if (inv[emb[k]])
            throw PreconditionError("pull_back: embedding is not injective");
        inv[emb[k]] = k;
    }
    std::vector<std::pair<Rank, uint32_t>> terms;
    terms.reserve(image.terms.size());
    for (auto& [r, co] : image.terms) {
        std::vector<uint32_t> tup = tuple_of(target, image.n, r);
        for (uint32_t& x : tup) {
            if (!inv[x])
                throw PreconditionError("pull_back: chain leaves the embedded copy");
            x = *inv[x];
        }
        terms.emplace_back(tuple_rank(base, tup), co);
    }
    return make_chain(base, image.n, image.l, std::move(terms));
}

CooDecomposition coordinate_decompose(const std::vector<Chain>& chains, uint32_t K) {
    CooDecomposition out;
    out.patterns.reserve(chains.size());
    out.supports.reserve(chains.size());
    for (const Chain& c : chains) {
        if (c.weight() > K)
            throw PreconditionError("coordinate_decompose: chain exceeds the size bound");
        /* coefficients ascending, ties by rank: invariant under any
         * injective relabeling of the supports */
        std::vector<std::pair<uint32_t, Rank>> sorted;
        sorted.reserve(c.terms.size());
        for (auto& [r, co] : c.terms) sorted.emplace_back(co, r);
        std::sort(sorted.begin(), sorted.end());
        std::vector<uint32_t> pat;
        std::vector<Rank> sup;
        for (auto& [co, r] : sorted) {
            pat.push_back(co);
            sup.push_back(r);
        }
        out.patterns.push_back(std::move(pat));
        out.supports.push_back(std::move(sup));
    }

    std::map<std::vector<uint32_t>, std::vector<size_t>> freq;
    for (size_t i = 0; i < out.patterns.size(); ++i) freq[out.patterns[i]].push_back(i);
    size_t best = 0;
    for (auto& [pat, idxs] : freq) {
        if (idxs.size() > best) { /* map order breaks ties lexicographically */
            best = idxs.size();
            out.t0 = pat;
            out.member_set = idxs;
        }
    }
    for (size_t i = 0; i < out.patterns.size(); ++i)
        if (std::find(out.member_set.begin(), out.member_set.end(), i) == out.member_set.end())
            out.dissent.push_back(i);
    return out;
}

Chain reassemble(const Group& g, const CooDecomposition& d, size_t index, uint32_t n, uint32_t l) {
    if (index >= d.patterns.size())
        throw PreconditionError("reassemble: index out of range");
    if (d.patterns[index] != d.t0)
        throw PreconditionError("reassemble: index dissents from the plurality pattern");
    std::vector<std::pair<Rank, uint32_t>> terms;
    for (size_t j = 0; j < d.t0.size(); ++j) terms.emplace_back(d.supports[index][j], d.t0[j]);
    return make_chain(g, n, l, std::move(terms));
}

namespace {

/* recipe AST; grammar in the header */
struct RecipeExp {
    bool qm1 = false;
    int64_t value = 1;
    int64_t divisor = 1;
};
struct RecipeAtom {
    char kind = 'e';
    uint32_t i = 0, j = 0;
    RecipeExp exp;
};
struct RecipeWord {
    std::vector<RecipeAtom> atoms;
};
struct RecipeTerm {
    int64_t coeff = 1;
    std::vector<RecipeWord> words;
};
struct Recipe {
    bool differential = false;
    size_t tuple_len = 0;
    std::vector<RecipeTerm> terms;
};

struct RecipeParser {
    const std::string& s;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("recipe: " + why + " at offset " + std::to_string(pos));
    }
    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool take(char c) {
        ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!take(c)) fail(std::string("expected '") + c + "'");
    }
    int64_t integer() {
        ws();
        bool neg = take('-');
        ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected a number");
        int64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000000000) fail("number too large");
            ++pos;
        }
        return neg ? -v : v;
    }

    RecipeExp exponent() {
        RecipeExp e;
        if (take('(')) {
            expect('q');
            expect('-');
            expect('1');
            expect(')');
            e.qm1 = true;
            if (take('/')) {
                e.divisor = integer();
                if (e.divisor <= 0) fail("divisor must be positive");
            }
        } else {
            e.value = integer();
        }
        return e;
    }

    RecipeAtom atom() {
        ws();
        if (pos >= s.size()) fail("expected an element");
        RecipeAtom a;
        char c = s[pos];
        if (c == 'e') {
            ++pos;
            a.kind = 'e';
        } else if (c == 'g') {
            ++pos;
            a.kind = 'g';
            a.i = static_cast<uint32_t>(integer());
        } else if (c == 'u') {
            ++pos;
            a.kind = 'u';
            if (pos + 1 >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])) ||
                !std::isdigit(static_cast<unsigned char>(s[pos + 1])))
                fail("unipotent needs two slot digits");
            a.i = static_cast<uint32_t>(s[pos] - '0');
            a.j = static_cast<uint32_t>(s[pos + 1] - '0');
            pos += 2;
        } else {
            fail("expected e, g<k> or u<i><j>");
        }
        if (take('^')) a.exp = exponent();
        return a;
    }

    RecipeWord word() {
        RecipeWord w;
        w.atoms.push_back(atom());
        while (take('*')) w.atoms.push_back(atom());
        return w;
    }

    std::vector<RecipeWord> tuple() {
        expect('<');
        std::vector<RecipeWord> words;
        words.push_back(word());
        while (take(',')) words.push_back(word());
        expect('>');
        return words;
    }

    RecipeTerm term() {
        RecipeTerm t;
        ws();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            t.coeff = integer();
            expect('*');
        }
        t.words = tuple();
        return t;
    }

    void chain(Recipe& r) {
        bool neg = take('-');
        for (;;) {
            RecipeTerm t = term();
            if (neg) t.coeff = -t.coeff;
            if (r.tuple_len == 0)
                r.tuple_len = t.words.size();
            else if (r.tuple_len != t.words.size())
                fail("tuples differ in length");
            r.terms.push_back(std::move(t));
            ws();
            if (take('+'))
                neg = false;
            else if (take('-'))
                neg = true;
            else
                break;
        }
    }

    Recipe recipe() {
        Recipe r;
        ws();
        if (pos + 1 < s.size() && s[pos] == 'd' && s[pos + 1] == '(') {
            pos += 2;
            r.differential = true;
            chain(r);
            expect(')');
        } else {
            chain(r);
        }
        ws();
        if (pos != s.size()) fail("trailing text");
        return r;
    }
};

std::optional<uint32_t> eval_atom(const Group& g, const RecipeAtom& a, uint32_t q,
                                  std::string& note) {
    int64_t ex;
    if (a.exp.qm1) {
        if (q == 0) {
            note = "index carries no field size";
            return std::nullopt;
        }
        if ((q - 1) % a.exp.divisor != 0) {
            note = "exponent denominator does not divide q-1";
            return std::nullopt;
        }
        ex = int64_t(q - 1) / a.exp.divisor;
    } else {
        ex = a.exp.value;
    }

    if (a.kind == 'e') return g.identity();
    if (!g.is_matrix_group()) {
        note = "recipe element needs a matrix group";
        return std::nullopt;
    }
    uint32_t d = g.mat_dim();
    std::vector<uint16_t> m(size_t(d) * d, 0);
    for (uint32_t k = 0; k < d; ++k) m[size_t(k) * d + k] = 1;
    const Fq& F = g.field();
    if (a.kind == 'g') {
        if (a.i < 1 || a.i > d) {
            note = "generator slot out of range";
            return std::nullopt;
        }
        m[size_t(a.i - 1) * d + (a.i - 1)] = static_cast<uint16_t>(F.pow(F.primitive(), ex));
    } else {
        if (a.i < 1 || a.j < 1 || a.i > d || a.j > d || a.i == a.j) {
            note = "unipotent needs two distinct slots in range";
            return std::nullopt;
        }
        int64_t p = F.p();
        m[size_t(a.i - 1) * d + (a.j - 1)] = static_cast<uint16_t>(((ex % p) + p) % p);
    }
    auto idx = g.index_of_matrix(m);
    if (!idx) {
        note = "element lies outside the group";
        return std::nullopt;
    }
    return idx;
}

std::optional<Chain> eval_recipe(const Group& g, const Recipe& r, uint32_t q, uint32_t deg,
                                 uint32_t l, std::string& note) {
    std::vector<std::pair<Rank, uint32_t>> terms;
    for (const RecipeTerm& t : r.terms) {
        std::vector<uint32_t> tup;
        tup.reserve(t.words.size());
        for (const RecipeWord& w : t.words) {
            uint32_t acc = g.identity();
            for (const RecipeAtom& a : w.atoms) {
                auto v = eval_atom(g, a, q, note);
                if (!v) return std::nullopt;
                acc = g.mul(acc, *v);
            }
            tup.push_back(acc);
        }
        uint32_t co = static_cast<uint32_t>(((t.coeff % l) + l) % l);
        if (co == 0) continue;
        terms.emplace_back(tuple_rank(g, tup), co);
    }
    return make_chain(g, deg, l, std::move(terms));
}

struct FillSlot {
    std::shared_ptr<ComplexOps> ops;
    SparseVec ub;
};

/* parallel phase: per-index exclusive state was materialized by the
 * caller, so workers only run searches over const columns */
void run_fills(Session& s, FamilyReport& rep, std::vector<FillSlot>& slots, uint32_t n,
               uint32_t l) {
    const RunConfig& cfg = s.config();
    auto fill_row = [&](size_t i) {
        FamilyIndexResult& row = rep.rows[i];
        if (row.skipped) return;
        if (row.b.is_zero()) {
            row.value = 0;
            row.exact = true;
            row.witness = zero_chain(n + 1, l);
            return;
        }
        FillerResult fr = fill_boundary(*slots[i].ops, cfg, row.b, slots[i].ub);
        row.value = fr.value;
        row.exact = fr.exact;
        row.witness = fr.witness;
    };

    size_t count = rep.rows.size();
    size_t threads = std::min<size_t>(std::max(1u, cfg.threads), count);
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i) fill_row(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(threads);
    size_t chunk = (count + threads - 1) / threads;
    for (size_t t = 0; t < threads; ++t) {
        size_t lo = std::min(count, t * chunk);
        size_t hi = std::min(count, lo + chunk);
        pool.emplace_back([&, t, lo, hi]() {
            try {
                for (size_t i = lo; i < hi; ++i) fill_row(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

void finalize_report(FamilyReport& rep) {
    bool any_skip = false, any_inexact = false;
    for (const FamilyIndexResult& row : rep.rows) {
        if (row.skipped) {
            any_skip = true;
            continue;
        }
        any_inexact = any_inexact || !row.exact;
        rep.max_value = std::max(rep.max_value, row.value);
    }
    rep.star_verdict = any_skip ? "mixed" : (any_inexact ? "exceeded-budget" : "bounded");
    rep.growth = growth_suspected(rep.rows);
}

} // namespace

FamilyReport check_star(Session& s, const GroupFamily& f, const std::vector<Chain>& boundaries) {
    if (boundaries.size() != f.members.size())
        throw PreconditionError("check_star: one boundary per family index required");
    validate_labels(f);

    FamilyReport rep;
    rep.rows.resize(f.members.size());
    std::vector<FillSlot> slots(f.members.size());
    for (size_t i = 0; i < f.members.size(); ++i) {
        const Chain& b = boundaries[i];
        if (b.n != f.n || b.l != f.l)
            throw PreconditionError("check_star: chain degree or modulus differs from the family");
        Group g = s.group(f.members[i].spec);
        FamilyIndexResult& row = rep.rows[i];
        row.label = f.members[i].label;
        row.order = g.order();
        row.b = b;
        rep.K = std::max(rep.K, b.weight());
        slots[i].ops = s.complex(g, f.n, f.l);
        if (b.is_zero()) continue;
        auto canon = slots[i].ops->canonical_filler(b);
        if (!canon)
            throw PreconditionError("check_star: chain at index " + row.label +
                                    " is not a boundary");
        slots[i].ub.e = canon->terms;
        slots[i].ops->filler_columns();
    }

    run_fills(s, rep, slots, f.n, f.l);
    finalize_report(rep);
    return rep;
}

FamilyReport asymp_probe(Session& s, const GroupFamily& f, const std::string& recipe, uint32_t K) {
    RecipeParser parser{recipe};
    Recipe r = parser.recipe();
    uint32_t deg = f.n + (r.differential ? 1 : 0);
    if (r.tuple_len != deg)
        throw PreconditionError("asymp_probe: recipe tuples have " +
                                std::to_string(r.tuple_len) + " entries, the family needs " +
                                std::to_string(deg));
    validate_labels(f);

    FamilyReport rep;
    rep.rows.resize(f.members.size());
    std::vector<FillSlot> slots(f.members.size());
    for (size_t i = 0; i < f.members.size(); ++i) {
        const FamilyMember& m = f.members[i];
        Group g = s.group(m.spec);
        FamilyIndexResult& row = rep.rows[i];
        row.label = m.label;
        row.order = g.order();

        std::string note;
        auto built = eval_recipe(g, r, m.q, deg, f.l, note);
        if (!built) {
            row.skipped = true;
            row.note = note;
            continue;
        }
        slots[i].ops = s.complex(g, f.n, f.l);
        Chain b = r.differential ? boundary(g, *built) : *built;
        if (b.weight() > K) {
            row.skipped = true;
            row.note = "boundary size exceeds the bound";
            continue;
        }
        row.b = b;
        rep.K = std::max(rep.K, b.weight());
        if (b.is_zero()) continue;
        auto canon = slots[i].ops->canonical_filler(b);
        if (!canon) {
            row.skipped = true;
            row.note = "recipe chain is not a boundary";
            continue;
        }
        slots[i].ub.e = canon->terms;
        slots[i].ops->filler_columns();
    }

    run_fills(s, rep, slots, f.n, f.l);
    finalize_report(rep);
    return rep;
}

bool growth_suspected(const std::vector<FamilyIndexResult>& rows) {
    std::vector<uint64_t> exact;
    for (const FamilyIndexResult& row : rows)
        if (!row.skipped && row.exact) exact.push_back(row.value);
    size_t k = exact.size();
    if (k < 3) return false;
    return exact[k - 3] < exact[k - 2] && exact[k - 2] < exact[k - 1];
}

std::string family_csv(const FamilyReport& r) {
    std::string out = "q,order,filler,exact\n";
    for (const FamilyIndexResult& row : r.rows) {
        out += row.label + "," + std::to_string(row.order) + ",";
        if (row.skipped)
            out += ",skipped";
        else
            out += std::to_string(row.value) + "," + (row.exact ? "yes" : "no");
        out += "\n";
    }
    return out;
}

} // namespace barfill
