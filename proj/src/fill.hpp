#pragma once
/* Internal filler entry points shared by the isoperimetry and family
 * modules.  Both verify their witness before returning. */

#include "barfill/isop.hpp"
#include "barfill/session.hpp"

namespace barfill {

/* minimal filler given a known upper-bound solution */
FillerResult fill_boundary(ComplexOps& ops, const RunConfig& cfg, const Chain& b,
                           const SparseVec& ub);

/* minimal filler; throws PreconditionError when b is not a boundary */
FillerResult fill_with_ops(ComplexOps& ops, const RunConfig& cfg, const Chain& b);

} // namespace barfill
