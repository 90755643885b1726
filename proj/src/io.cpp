#include "qrelax/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qrelax {

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string csv_line(const DiagnosticsRow& r) {
    std::string s;
    s.reserve(280);
    const double cols[] = {r.t,      r.norm_psi,          r.h_sym,
                           r.h_val,  r.h_val_coarse,      r.l1_dist,
                           r.fq_min, r.fq_max,            r.cont_residual_sup,
                           r.dh_integrand_max,            r.excluded_mass};
    for (std::size_t i = 0; i < std::size(cols); ++i) {
        if (i) s += ',';
        s += fmt17(cols[i]);
    }
    return s;
}

void write_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += csv_line(r);
        out += '\n';
    }
    write_text_file(path, out);
}

std::string field_snapshot_text(const ComplexField& psi) {
    const Grid& g = psi.grid;
    std::string out;
    out.reserve(psi.size() * 96);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (g.dim == 1) {
            out += fmt17(g.coord(static_cast<int>(i)));
        } else {
            out += fmt17(g.coord(static_cast<int>(i) / g.n));
            out += ' ';
            out += fmt17(g.coord(static_cast<int>(i) % g.n));
        }
        out += ' ';
        out += fmt17(psi.v[i].real());
        out += ' ';
        out += fmt17(psi.v[i].imag());
        out += ' ';
        out += fmt17(std::norm(psi.v[i]));
        out += '\n';
    }
    return out;
}

void write_field_snapshot(const std::string& path, const ComplexField& psi) {
    write_text_file(path, field_snapshot_text(psi));
}

std::string ensemble_snapshot_text(const ParticleEnsemble& ens, double t) {
    std::string out = "# N=" + std::to_string(ens.size()) +
                      " seed=" + std::to_string(ens.seed) + " t=" + fmt17(t) + "\n";
    out.reserve(out.size() + ens.pos.size() * 26);
    for (std::size_t i = 0; i < ens.size(); ++i) {
        for (int d = 0; d < ens.dim; ++d) {
            if (d) out += ' ';
            out += fmt17(ens.pos[i * ens.dim + d]);
        }
        out += '\n';
    }
    return out;
}

void write_ensemble_snapshot(const std::string& path, const ParticleEnsemble& ens, double t) {
    write_text_file(path, ensemble_snapshot_text(ens, t));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace qrelax
