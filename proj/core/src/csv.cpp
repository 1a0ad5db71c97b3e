#include <cmath>
#include <cstdio>
#include <fstream>

#include "jcdemon/errors.hpp"
#include "jcdemon/experiment.hpp"

namespace jcdemon {

const std::vector<std::string> kRecordColumns = {
    "gt",        "theta",      "Pe",        "Re_Ceg",    "Im_Ceg",         "E_Q",           "E_C",
    "S_Q",       "S_C",        "S_QC",      "I_QC",      "p_eff_Q",        "nbar_eff_C",    "Eth_Q",
    "Eth_C",     "Q_C",        "W_C",       "Q_Q",       "W_Q",            "sigma_Q",       "demon_lhs",
    "demon_rhs", "Re_mean_a",  "Im_mean_a", "abs_cross_trace", "branch_overlap"};

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string join_header(const std::vector<std::string>& cols) {
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i];
    }
    out += '\n';
    return out;
}

}  // namespace

std::string records_to_csv(const std::vector<ThermoRecord>& records) {
    std::string out = join_header(kRecordColumns);
    for (const auto& r : records) {
        const double row[] = {r.gt,        r.theta,         r.P_e,          r.C_eg.real(),       r.C_eg.imag(),
                              r.E_Q,       r.E_C,           r.S_Q,          r.S_C,               r.S_QC,
                              r.I_QC,      r.p_eff_Q,       r.nbar_eff_C,   r.Eth_Q,             r.Eth_C,
                              r.Q_C,       r.W_C,           r.Q_Q,          r.W_Q,               r.sigma_Q,
                              r.demon_lhs, r.demon_rhs,     r.mean_a.real(), r.mean_a.imag(),    std::abs(r.cross_trace),
                              r.branch_overlap};
        static_assert(sizeof(row) / sizeof(row[0]) == 26);
        for (std::size_t i = 0; i < 26; ++i) {
            if (i) out += ',';
            out += format_real(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string scaling_to_csv(const std::vector<ScalingRow>& rows) {
    std::string out = join_header({"n0", "quantity", "max_abs_dev", "scaled_dev", "ratio"});
    for (const auto& r : rows) {
        out += format_real(r.n0) + ',' + r.quantity + ',' + format_real(r.max_abs_dev) + ',' +
               format_real(r.scaled_dev) + ',' + format_real(r.ratio) + '\n';
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw ConfigError("failed writing '" + path + "'");
}

void write_records_csv(const std::string& path, const std::vector<ThermoRecord>& records) {
    write_text(path, records_to_csv(records));
}

}  // namespace jcdemon
