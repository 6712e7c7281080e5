#include "barfill/chain.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace barfill {

uint64_t chain_space_dim(const Group& g, uint32_t n) {
    uint64_t d = 1;
    for (uint32_t i = 0; i < n; ++i) {
        if (d > UINT64_MAX / g.order())
            throw RefusedError("chain space dimension overflows 64 bits");
        d *= g.order();
    }
    return d;
}

Rank tuple_rank(const Group& g, std::span<const uint32_t> tuple) {
    Rank r = 0;
    for (uint32_t e : tuple)
        r = r * g.order() + e;
    return r;
}

void tuple_unrank(const Group& g, uint32_t n, Rank r, uint32_t* out) {
    for (uint32_t i = n; i > 0; --i) {
        out[i - 1] = static_cast<uint32_t>(r % g.order());
        r /= g.order();
    }
}

std::vector<uint32_t> tuple_of(const Group& g, uint32_t n, Rank r) {
    std::vector<uint32_t> t(n);
    tuple_unrank(g, n, r, t.data());
    return t;
}

static void normalize_terms(std::vector<std::pair<Rank, uint32_t>>& terms, uint32_t l) {
    std::sort(terms.begin(), terms.end());
    size_t out = 0;
    for (size_t i = 0; i < terms.size();) {
        Rank r = terms[i].first;
        uint64_t c = 0;
        while (i < terms.size() && terms[i].first == r) {
            c += terms[i].second % l;
            ++i;
        }
        c %= l;
        if (c)
            terms[out++] = {r, static_cast<uint32_t>(c)};
    }
    terms.resize(out);
}

Chain make_chain(const Group& g, uint32_t n, uint32_t l,
                 std::vector<std::pair<Rank, uint32_t>> terms) {
    if (l < 2)
        throw PreconditionError("coefficient modulus must be >= 2");
    uint64_t dim = chain_space_dim(g, n);
    for (auto& [r, c] : terms)
        if (r >= dim)
            throw PreconditionError("chain term rank out of range");
    Chain ch;
    ch.n = n;
    ch.l = l;
    ch.terms = std::move(terms);
    normalize_terms(ch.terms, l);
    return ch;
}

Chain zero_chain(uint32_t n, uint32_t l) {
    Chain ch;
    ch.n = n;
    ch.l = l;
    return ch;
}

Chain chain_scale(const Chain& a, uint32_t c) {
    c %= a.l;
    Chain out = zero_chain(a.n, a.l);
    if (c == 0)
        return out;
    out.terms.reserve(a.terms.size());
    for (auto& [r, k] : a.terms) {
        uint32_t v = static_cast<uint32_t>((uint64_t(k) * c) % a.l);
        if (v)
            out.terms.emplace_back(r, v);
    }
    return out;
}

static Chain merge_terms(const Chain& a, const Chain& b, uint32_t bscale) {
    if (a.n != b.n || a.l != b.l)
        throw PreconditionError("chain arithmetic: degree or modulus mismatch");
    Chain out = zero_chain(a.n, a.l);
    out.terms.reserve(a.terms.size() + b.terms.size());
    size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        bool ta = i < a.terms.size();
        bool tb = j < b.terms.size();
        Rank r;
        uint64_t c = 0;
        if (ta && (!tb || a.terms[i].first <= b.terms[j].first)) {
            r = a.terms[i].first;
            c += a.terms[i].second;
            ++i;
        } else {
            r = b.terms[j].first;
        }
        if (tb && j < b.terms.size() && b.terms[j].first == r) {
            c += uint64_t(b.terms[j].second) * bscale;
            ++j;
        }
        c %= a.l;
        if (c)
            out.terms.emplace_back(r, static_cast<uint32_t>(c));
    }
    return out;
}

Chain chain_add(const Chain& a, const Chain& b) { return merge_terms(a, b, 1); }
Chain chain_sub(const Chain& a, const Chain& b) { return merge_terms(a, b, a.l - 1); }

Chain boundary(const Group& g, const Chain& c) {
    if (c.n == 0)
        throw PreconditionError("boundary: degree-0 chains have no boundary");
    uint32_t n = c.n;
    std::vector<std::pair<Rank, uint32_t>> acc;
    acc.reserve(c.terms.size() * (n + 1));
    std::vector<uint32_t> t(n), f(n ? n - 1 : 0);
    for (auto& [rank, coeff] : c.terms) {
        tuple_unrank(g, n, rank, t.data());
        for (uint32_t face = 0; face <= n; ++face) {
            /* face 0 drops the first entry, face n the last,
             * face i merges entries i-1 and i; sign (-1)^face */
            if (face == 0) {
                std::copy(t.begin() + 1, t.end(), f.begin());
            } else if (face == n) {
                std::copy(t.begin(), t.end() - 1, f.begin());
            } else {
                for (uint32_t k = 0, w = 0; k < n; ++k) {
                    if (k == face - 1)
                        f[w++] = g.mul(t[k], t[k + 1]);
                    else if (k != face)
                        f[w++] = t[k];
                }
            }
            uint32_t sc = (face % 2 == 0) ? coeff : (c.l - coeff) % c.l;
            if (sc)
                acc.emplace_back(tuple_rank(g, {f.data(), size_t(n - 1)}), sc);
        }
    }
    normalize_terms(acc, c.l);
    Chain out = zero_chain(n - 1, c.l);
    out.terms = std::move(acc);
    return out;
}

Chain random_chain(const Group& g, uint32_t n, uint32_t l, uint64_t weight, Rng& rng) {
    uint64_t dim = chain_space_dim(g, n);
    if (weight > dim)
        throw PreconditionError("random_chain: weight exceeds the tuple count");
    /* Floyd's subset sampling: uniform over weight-subsets of [0, dim) */
    std::set<Rank> support;
    for (uint64_t j = dim - weight; j < dim; ++j) {
        Rank t = rng.below(j + 1);
        support.insert(support.count(t) ? j : t);
    }
    Chain ch = zero_chain(n, l);
    ch.terms.reserve(weight);
    for (Rank r : support)
        ch.terms.emplace_back(r, l == 2 ? 1 : static_cast<uint32_t>(rng.range(1, l - 1)));
    return ch;
}

std::string format_chain(const Chain& c, const Group& g) {
    if (c.is_zero())
        return "0";
    std::string s;
    std::vector<uint32_t> t(c.n);
    for (auto& [rank, coeff] : c.terms) {
        if (!s.empty())
            s += " + ";
        if (coeff != 1)
            s += std::to_string(coeff) + "*";
        tuple_unrank(g, c.n, rank, t.data());
        s += '<';
        for (uint32_t i = 0; i < c.n; ++i) {
            if (i)
                s += ',';
            s += std::to_string(t[i]);
        }
        s += '>';
    }
    return s;
}

std::string chain_to_json(const Group& g, const Chain& c) {
    nlohmann::json j;
    j["group"] = g.spec();
    j["n"] = c.n;
    j["l"] = c.l;
    auto terms = nlohmann::json::array();
    std::vector<uint32_t> t(c.n);
    for (auto& [rank, coeff] : c.terms) {
        tuple_unrank(g, c.n, rank, t.data());
        terms.push_back(nlohmann::json::array({coeff, t}));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

static uint64_t get_u64(const nlohmann::json& v, const char* what) {
    if (!v.is_number_unsigned())
        throw ParseError(std::string("chain json: ") + what + " must be a nonnegative integer");
    return v.get<uint64_t>();
}

static Chain chain_from_parsed(const Group& g, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("l") || !j.contains("terms"))
        throw ParseError("chain json: need fields group, n, l, terms");
    uint64_t n = get_u64(j.at("n"), "n");
    uint64_t l = get_u64(j.at("l"), "l");
    if (n > 16)
        throw ParseError("chain json: degree too large");
    if (l < 2 || l > 65535)
        throw ParseError("chain json: modulus must be in 2..65535");
    if (!j.at("terms").is_array())
        throw ParseError("chain json: terms must be an array");
    std::vector<std::pair<Rank, uint32_t>> terms;
    for (const auto& term : j.at("terms")) {
        if (!term.is_array() || term.size() != 2 || !term[1].is_array())
            throw ParseError("chain json: each term must be [coeff, [elements]]");
        uint64_t coeff = get_u64(term[0], "coefficient");
        std::vector<uint32_t> tuple;
        for (const auto& e : term[1]) {
            uint64_t v = get_u64(e, "element index");
            if (v >= g.order())
                throw ParseError("chain json: element index out of range");
            tuple.push_back(static_cast<uint32_t>(v));
        }
        if (tuple.size() != n)
            throw ParseError("chain json: tuple length does not match n");
        terms.emplace_back(tuple_rank(g, tuple), static_cast<uint32_t>(coeff % l));
    }
    return make_chain(g, static_cast<uint32_t>(n), static_cast<uint32_t>(l), std::move(terms));
}

ParsedChain parse_chain_json(const std::string& text, const RunConfig& cfg) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("chain json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("group") || !j.at("group").is_string())
        throw ParseError("chain json: missing group spec");
    try {
        ParsedChain pc;
        pc.group = build_group(j.at("group").get<std::string>(), cfg);
        pc.chain = chain_from_parsed(pc.group, j);
        return pc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("chain json: ") + e.what());
    }
}

Chain chain_from_json(const Group& g, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        if (j.is_object() && j.contains("group") && j.at("group").get<std::string>() != g.spec())
            throw ParseError("chain json: group spec does not match");
        return chain_from_parsed(g, j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("chain json: ") + e.what());
    }
}

} // namespace barfill
