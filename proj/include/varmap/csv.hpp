#pragma once

#include <iosfwd>
#include <span>

#include "varmap/compare.hpp"
#include "varmap/feigenbaum.hpp"

namespace varmap::io {

// RFC-4180-style CSV: header row, LF line endings, numeric fields only
// (shortest round-trip decimals), so identical inputs give byte-identical
// files.  Undetected periods serialize as an empty field.

/// omega,q,p,period,escaped -- one row per kept point per omega.
void write_sweep_csv(std::ostream& out,
                     std::span<const feigenbaum::SweepRecord> records);

/// q,p
void write_attractor_csv(std::ostream& out,
                         std::span<const dynamics::Point2> points);

/// omega,q,p,period,stable,multiplier_re1,multiplier_im1,multiplier_re2,multiplier_im2,converged
void write_fixpoint_csv(std::ostream& out,
                        std::span<const feigenbaum::TrailPoint> trail);

/// order,radius,max_err,mean_err
void write_compare_csv(std::ostream& out,
                       std::span<const compare::CompareRow> rows);

}  // namespace varmap::io
