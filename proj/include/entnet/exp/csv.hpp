#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "entnet/canonical/generator.hpp"
#include "entnet/common/errors.hpp"
#include "entnet/hjnet/state.hpp"
#include "entnet/qboltz/density_matrix.hpp"
#include "entnet/witness/witnesses.hpp"

namespace entnet::exp {

// 17 significant digits: round-trips IEEE doubles and keeps artifacts
// byte-stable across runs.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        return -1;
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open csv file '" + path + "'");
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        if (table.columns.empty()) {
            while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError("csv parse error in '" + path + "' line " +
                                  std::to_string(line_no) + ": bad number '" + cell + "'");
            }
        }
        if (row.size() != table.columns.size())
            throw ConfigError("csv parse error in '" + path + "' line " +
                              std::to_string(line_no) + ": expected " +
                              std::to_string(table.columns.size()) + " cells");
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty()) throw ConfigError("csv file '" + path + "' has no header");
    return table;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::trunc) {
        if (!out_) throw ConfigError("cannot write csv file '" + path + "'");
    }

    void raw_line(const std::string& line) { out_ << line << '\n'; }

    void header(const std::vector<std::string>& columns) {
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt17(values[i]);
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

// t,J,E,H,y_*,delta_*, then row-major W and M.
inline void write_trajectory_csv(const std::string& path, const hjnet::Trajectory& traj,
                                 const hjnet::NetConfig& cfg) {
    CsvWriter w(path);
    std::vector<std::string> cols{"t", "J", "E", "H"};
    const int n = cfg.n_neurons;
    for (int i = 0; i < n; ++i) cols.push_back("y_" + std::to_string(i));
    for (int i = 0; i < n; ++i) cols.push_back("delta_" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cols.push_back("w_" + std::to_string(i) + "_" + std::to_string(j));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cols.push_back("m_" + std::to_string(i) + "_" + std::to_string(j));
    w.header(cols);

    std::vector<double> row;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        row.clear();
        const hjnet::NetState& s = traj.states[k];
        row.push_back(s.t);
        row.push_back(traj.action[k]);
        row.push_back(traj.error[k]);
        row.push_back(traj.energy[k]);
        for (int i = 0; i < n; ++i) row.push_back(s.y(i));
        for (int i = 0; i < n; ++i) row.push_back(s.delta(i));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) row.push_back(s.w(i, j));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) row.push_back(s.m(i, j));
        w.row(row);
    }
}

inline void write_potential_csv(const std::string& path, const std::vector<double>& times,
                                const std::vector<double>& v) {
    if (times.size() != v.size())
        throw ConfigError("write_potential_csv: length mismatch");
    CsvWriter w(path);
    w.header({"t", "V"});
    for (std::size_t k = 0; k < times.size(); ++k) w.row({times[k], v[k]});
}

// t, re/im of all 16 entries row-major, concurrence, negativity: 34 columns.
inline void write_evolution_csv(const std::string& path, const std::vector<double>& times,
                                const std::vector<qboltz::DensityMatrix>& rhos,
                                const std::vector<witness::WitnessReport>& reports) {
    if (times.size() != rhos.size() || times.size() != reports.size())
        throw ConfigError("write_evolution_csv: length mismatch");
    CsvWriter w(path);
    std::vector<std::string> cols{"t"};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cols.push_back("re_rho_" + std::to_string(i) + std::to_string(j));
            cols.push_back("im_rho_" + std::to_string(i) + std::to_string(j));
        }
    cols.push_back("concurrence");
    cols.push_back("negativity");
    w.header(cols);

    std::vector<double> row;
    for (std::size_t k = 0; k < times.size(); ++k) {
        row.clear();
        row.push_back(times[k]);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                row.push_back(rhos[k](i, j).real());
                row.push_back(rhos[k](i, j).imag());
            }
        row.push_back(reports[k].concurrence);
        row.push_back(reports[k].negativity);
        w.row(row);
    }
}

inline void write_witness_csv(const std::string& path,
                              const std::vector<witness::WitnessReport>& reports) {
    CsvWriter w(path);
    w.header({"t", "concurrence", "negativity", "lambda1", "lambda2", "lambda3", "lambda4",
              "pt_min_eig", "purity"});
    for (const auto& r : reports)
        w.row({r.t, r.concurrence, r.negativity, r.wootters_lambdas(0),
               r.wootters_lambdas(1), r.wootters_lambdas(2), r.wootters_lambdas(3),
               r.pt_min_eigenvalue, r.purity});
}

struct CanonicalRow {
    double epsilon = 0;
    double residual = 0;
    double symplectic_defect = 0;
    int iterations = 0;
};

inline void write_canonical_csv(const std::string& path,
                                const std::vector<CanonicalRow>& rows) {
    CsvWriter w(path);
    w.header({"epsilon", "residual", "symplectic_defect", "iterations"});
    for (const auto& r : rows)
        w.row({r.epsilon, r.residual, r.symplectic_defect,
               static_cast<double>(r.iterations)});
}

// m,re_g,im_g with a leading metadata line naming the solve.
inline void write_generator_csv(const std::string& path,
                                const canonical::GeneratorSeries& g, double epsilon,
                                double residual) {
    CsvWriter w(path);
    std::string meta = "# J=";
    for (Eigen::Index d = 0; d < g.action_j.size(); ++d)
        meta += (d ? " " : "") + fmt17(g.action_j(d));
    meta += " epsilon=" + fmt17(epsilon) + " order=" + std::to_string(g.truncation_order) +
            " grid=" + std::to_string(g.grid_size) + " residual=" + fmt17(residual);
    w.raw_line(meta);
    w.header({"m", "re_g", "im_g"});
    for (const auto& [m, coeff] : g.modes) {
        if (m.size() == 1) {
            w.row({static_cast<double>(m[0]), coeff.real(), coeff.imag()});
        } else {
            std::string key;
            for (std::size_t d = 0; d < m.size(); ++d)
                key += (d ? ";" : "") + std::to_string(m[d]);
            w.raw_line(key + "," + fmt17(coeff.real()) + "," + fmt17(coeff.imag()));
        }
    }
}

}  // namespace entnet::exp
