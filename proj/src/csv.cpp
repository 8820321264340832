#include "varmap/csv.hpp"

#include <ostream>

#include "varmap/mapfile.hpp"

namespace varmap::io {

void write_sweep_csv(std::ostream& out,
                     std::span<const feigenbaum::SweepRecord> records) {
  out << "omega,q,p,period,escaped\n";
  for (const auto& rec : records) {
    const std::string om = format_double(rec.omega);
    const std::string per = rec.period ? std::to_string(*rec.period) : std::string();
    const char esc = rec.escaped ? '1' : '0';
    for (const auto& z : rec.kept)
      out << om << ',' << format_double(z.q) << ',' << format_double(z.p) << ','
          << per << ',' << esc << '\n';
  }
}

void write_attractor_csv(std::ostream& out,
                         std::span<const dynamics::Point2> points) {
  out << "q,p\n";
  for (const auto& z : points)
    out << format_double(z.q) << ',' << format_double(z.p) << '\n';
}

void write_fixpoint_csv(std::ostream& out,
                        std::span<const feigenbaum::TrailPoint> trail) {
  out << "omega,q,p,period,stable,multiplier_re1,multiplier_im1,"
         "multiplier_re2,multiplier_im2,converged\n";
  for (const auto& t : trail) {
    const auto& fp = t.fp;
    out << format_double(t.omega) << ',' << format_double(fp.location.q) << ','
        << format_double(fp.location.p) << ',' << fp.period << ','
        << (fp.stability == dynamics::Stability::stable ? '1' : '0') << ','
        << format_double(fp.multipliers[0].real()) << ','
        << format_double(fp.multipliers[0].imag()) << ','
        << format_double(fp.multipliers[1].real()) << ','
        << format_double(fp.multipliers[1].imag()) << ','
        << (fp.converged ? '1' : '0') << '\n';
  }
}

void write_compare_csv(std::ostream& out,
                       std::span<const compare::CompareRow> rows) {
  out << "order,radius,max_err,mean_err\n";
  for (const auto& row : rows)
    out << row.order << ',' << format_double(row.radius) << ','
        << format_double(row.max_err) << ',' << format_double(row.mean_err) << '\n';
}

}  // namespace varmap::io
