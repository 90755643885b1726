#pragma once

#include <string>
#include <vector>

#include "qrelax/diagnostics.hpp"
#include "qrelax/ensemble.hpp"
#include "qrelax/field.hpp"

namespace qrelax {

/// 17 significant digits, enough to round-trip any double.
std::string fmt17(double x);

inline constexpr const char* kCsvHeader =
    "t,norm_psi,h_sym,h_val,h_val_coarse,l1_dist,fq_min,fq_max,"
    "cont_residual_sup,dh_integrand_max,excluded_mass";

std::string csv_line(const DiagnosticsRow& row);
void write_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows);

/// Field snapshot: one node per line, row-major, columns
/// `x [y] re_psi im_psi abs2_psi`.
std::string field_snapshot_text(const ComplexField& psi);
void write_field_snapshot(const std::string& path, const ComplexField& psi);

/// Ensemble snapshot: header `# N=<n> seed=<s> t=<t>`, then one position per
/// line with dim columns.
std::string ensemble_snapshot_text(const ParticleEnsemble& ens, double t);
void write_ensemble_snapshot(const std::string& path, const ParticleEnsemble& ens, double t);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qrelax
