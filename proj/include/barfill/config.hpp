#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace barfill {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* Bad group-spec, chain or recipe text. */
class ParseError : public Error {
public:
    using Error::Error;
};

/* The caller broke an operation contract (wrong degree, not a boundary, ...). */
class PreconditionError : public Error {
public:
    using Error::Error;
};

/* A configured cap or budget stopped the computation.  Refused is not false. */
class RefusedError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    uint32_t order_cap = 20000;         /* largest group order build_group accepts */
    uint64_t dim_cap = 10000000;        /* largest tuple space a matrix side may index */
    uint64_t nnz_cap = 10000000;        /* sparse matrix nonzero cap */
    uint64_t census_cap = 100000;       /* exhaustive census size cap (isop/phi/psi) */
    uint64_t node_budget = 10000000;    /* branch-and-bound nodes per filler search */
    uint32_t weight_ceiling = 8;        /* deepest filler weight a search certifies */
    uint64_t seed = 1;
    uint32_t threads = 1;
    std::string checkpoint_path;        /* census checkpoint file ("" = off) */
    std::string format = "json";        /* json | csv (family tables) */

    /* key=value, same keys as the member names above */
    void set(const std::string& key, const std::string& value);
    void load_file(const std::string& path);
    void load_env(); /* reads the file named by $BARFILL_CONFIG, if set */
};

} // namespace barfill
