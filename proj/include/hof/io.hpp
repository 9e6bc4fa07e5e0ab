// io.hpp — CSV and JSON emission for the command-line tools
//
// All floating-point values are printed with 12 significant digits, UTF-8,
// LF line endings, '.' decimal separator.  Writers emit fully assembled
// results in index order, so identical inputs give byte-identical files.

#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hof/butterfly.hpp"
#include "hof/ground_state.hpp"
#include "hof/micro_model.hpp"
#include "hof/momentum.hpp"

namespace hof {

inline std::string format_g12(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

inline void write_butterfly_csv(std::ostream& os, const ButterflySpectrum& bs) {
    os << "alpha,index,energy\n";
    for (std::size_t i = 0; i < bs.alphas.size(); ++i) {
        const std::string alpha = format_g12(bs.alphas[i]);
        for (std::size_t k = 0; k < bs.energies[i].size(); ++k) {
            os << alpha << ',' << k << ',' << format_g12(bs.energies[i][k]) << '\n';
        }
    }
}

inline void write_ground_csv(std::ostream& os, const GroundStateRecord& rec) {
    os << "p,q,re,im,abs2\n";
    for (std::size_t p = 1; p <= rec.spec.rows; ++p) {
        for (std::size_t q = 1; q <= rec.spec.cols; ++q) {
            const Complex a = rec.at(p, q);
            os << p << ',' << q << ',' << format_g12(a.real()) << ',' << format_g12(a.imag())
               << ',' << format_g12(std::norm(a)) << '\n';
        }
    }
}

inline void write_density_csv(std::ostream& os, const GroundStateRecord& rec) {
    os << "p,q,abs2\n";
    for (std::size_t p = 1; p <= rec.spec.rows; ++p) {
        for (std::size_t q = 1; q <= rec.spec.cols; ++q) {
            os << p << ',' << q << ',' << format_g12(std::norm(rec.at(p, q))) << '\n';
        }
    }
}

inline void write_fidelity_csv(std::ostream& os, const FidelityTrace& trace) {
    os << "alpha,fidelity\n";
    for (std::size_t k = 0; k < trace.alphas.size(); ++k) {
        os << format_g12(trace.alphas[k]) << ',' << format_g12(trace.fidelities[k]) << '\n';
    }
}

inline void write_momentum_csv(std::ostream& os, const MomentumMap& map) {
    os << "kp,kq,magnitude\n";
    for (std::size_t m = 1; m <= map.rows; ++m) {
        for (std::size_t n = 1; n <= map.cols; ++n) {
            os << format_g12(map.momentum_p(m)) << ',' << format_g12(map.momentum_q(n)) << ','
               << format_g12(std::abs(map.at(m, n))) << '\n';
        }
    }
}

inline void write_peaks_csv(std::ostream& os, const std::vector<Peak>& peaks) {
    os << "kp,kq,magnitude\n";
    for (const Peak& pk : peaks) {
        os << format_g12(pk.k_p) << ',' << format_g12(pk.k_q) << ','
           << format_g12(pk.magnitude) << '\n';
    }
}

inline void write_fit_csv(std::ostream& os, const std::vector<AlphaFitRow>& rows) {
    os << "L,alpha0,prediction,deviation\n";
    for (const AlphaFitRow& row : rows) {
        os << row.size << ',' << (row.found ? format_g12(row.alpha0) : "nan") << ','
           << format_g12(row.prediction) << ','
           << (row.found ? format_g12(row.relative_deviation) : "nan") << '\n';
    }
}

inline nlohmann::ordered_json crossing_report_json(const CrossingReport& report,
                                                   const LatticeSpec& spec) {
    nlohmann::ordered_json j;
    j["rows"] = spec.rows;
    j["cols"] = spec.cols;
    j["threshold"] = report.threshold;
    j["crossings"] = nlohmann::ordered_json::array();
    for (const CrossingBracket& br : report.crossings) {
        nlohmann::ordered_json item;
        item["grid_lo"] = br.grid_lo;
        item["grid_hi"] = br.grid_hi;
        item["lo"] = br.lo;
        item["hi"] = br.hi;
        item["alpha0"] = br.alpha0;
        j["crossings"].push_back(item);
    }
    j["alpha0"] = report.crossings.empty() ? nlohmann::ordered_json()
                                           : nlohmann::ordered_json(report.alpha0);
    j["fit_prediction"] = report.fit_prediction;
    j["perturbation_prediction"] = report.perturbation_prediction;
    return j;
}

inline nlohmann::ordered_json validator_json(const ValidatorResult& res,
                                             const FullModelSpec& spec) {
    nlohmann::ordered_json j;
    j["sites"] = spec.sites;
    j["g"] = spec.g;
    j["tunneling"] = spec.tunneling;
    j["delta"] = spec.delta;
    j["theta"] = spec.theta;
    j["photon_cutoff"] = spec.photon_cutoff;
    j["method"] =
        res.method == ValidationMethod::SchurComplement ? "schur_complement" : "dynamics";
    j["j_effective"] = {{"re", res.j_effective.real()}, {"im", res.j_effective.imag()}};
    j["j_effective_abs"] = std::abs(res.j_effective);
    j["j_predicted"] = {{"re", res.j_predicted.real()}, {"im", res.j_predicted.imag()}};
    j["j_predicted_abs"] = std::abs(res.j_predicted);
    j["relative_error"] = res.relative_error;
    j["g_over_delta"] = res.g_over_delta;
    j["t_over_delta"] = res.t_over_delta;
    return j;
}

}  // namespace hof
