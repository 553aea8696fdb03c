#include "mvrkm/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mvrkm {

TimeSeries gen_sine(Index n, double freq, double amplitude, double phase, double dt) {
    if (n < 1) throw std::invalid_argument("gen_sine: need at least one sample");
    if (!(dt > 0.0)) throw std::invalid_argument("gen_sine: dt must be positive");
    TimeSeries out;
    out.values.resize(n, 1);
    const double w = 2.0 * std::numbers::pi * freq;
    for (Index t = 0; t < n; ++t) {
        out.values(t, 0) = amplitude * std::sin(w * static_cast<double>(t) * dt + phase);
    }
    return out;
}

TimeSeries gen_sum_sines(Index n, const std::vector<double>& amplitudes,
                         const std::vector<double>& freqs, const std::vector<double>& phases,
                         double dt) {
    if (amplitudes.size() != freqs.size() || amplitudes.size() != phases.size()) {
        throw std::invalid_argument("gen_sum_sines: parameter lists must have equal length");
    }
    if (amplitudes.empty()) throw std::invalid_argument("gen_sum_sines: no components");
    TimeSeries out;
    out.values = Matrix::Zero(n, 1);
    for (std::size_t c = 0; c < amplitudes.size(); ++c) {
        out.values += gen_sine(n, freqs[c], amplitudes[c], phases[c], dt).values;
    }
    return out;
}

TimeSeries gen_lorenz(const LorenzParams& params) {
    if (!(params.dt > 0.0)) throw std::invalid_argument("gen_lorenz: dt must be positive");
    if (params.steps < 1) throw std::invalid_argument("gen_lorenz: need at least one step");
    TimeSeries out;
    out.values.resize(params.steps, 3);
    double x = params.x0, y = params.y0, z = params.z0;
    out.values.row(0) << x, y, z;
    for (Index k = 1; k < params.steps; ++k) {
        const double dx = -params.a * x + params.a * y;
        const double dy = -x * z + params.r * x - y;
        const double dz = x * y - params.b * z;
        x += params.dt * dx;
        y += params.dt * dy;
        z += params.dt * dz;
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
            throw std::runtime_error("gen_lorenz: state diverged at step " + std::to_string(k) +
                                     "; reduce dt");
        }
        out.values.row(k) << x, y, z;
    }
    return out;
}

TimeSeries load_csv(const std::string& path, bool has_header, const std::vector<int>& columns) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    std::vector<std::vector<double>> rows;
    std::string line;
    long line_no = 0;
    bool skip_next = has_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skip_next) {
            skip_next = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<double> fields;
        std::size_t start = 0;
        int col_no = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string cell =
                line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            ++col_no;
            try {
                std::size_t pos = 0;
                const double v = std::stod(cell, &pos);
                while (pos < cell.size() && (cell[pos] == ' ' || cell[pos] == '\t')) ++pos;
                if (pos != cell.size()) throw std::invalid_argument("trailing characters");
                if (!std::isfinite(v)) {
                    throw std::runtime_error("'" + path + "': non-finite value at line " +
                                             std::to_string(line_no) + ", column " +
                                             std::to_string(col_no));
                }
                fields.push_back(v);
            } catch (const std::runtime_error&) {
                throw;
            } catch (const std::exception&) {
                throw std::runtime_error("'" + path + "': cannot parse '" + cell + "' at line " +
                                         std::to_string(line_no) + ", column " +
                                         std::to_string(col_no));
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && fields.size() != rows.front().size()) {
            throw std::runtime_error("'" + path + "': line " + std::to_string(line_no) + " has " +
                                     std::to_string(fields.size()) + " columns, expected " +
                                     std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) throw std::runtime_error("'" + path + "': no data rows");

    const int width = static_cast<int>(rows.front().size());
    std::vector<int> selected = columns;
    if (selected.empty()) {
        selected.resize(static_cast<std::size_t>(width));
        for (int j = 0; j < width; ++j) selected[static_cast<std::size_t>(j)] = j;
    }
    for (int c : selected) {
        if (c < 0 || c >= width) {
            throw std::runtime_error("'" + path + "': column " + std::to_string(c) +
                                     " out of range (file has " + std::to_string(width) + ")");
        }
    }

    TimeSeries out;
    out.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(selected.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < selected.size(); ++j) {
            out.values(static_cast<Index>(i), static_cast<Index>(j)) =
                rows[i][static_cast<std::size_t>(selected[j])];
        }
    }
    return out;
}

void save_csv(const std::string& path, const Matrix& values, const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    if (!header.empty()) {
        if (static_cast<Index>(header.size()) != values.cols()) {
            throw std::invalid_argument("save_csv: header width does not match data");
        }
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (j) out << ',';
            out << header[j];
        }
        out << '\n';
    }
    char buf[64];
    for (Index i = 0; i < values.rows(); ++i) {
        for (Index j = 0; j < values.cols(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", values(i, j));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::pair<TimeSeries, TimeSeries> split(const TimeSeries& series, const SplitSpec& spec) {
    if (spec.n_train < 0 || spec.n_test < 0 || spec.n_train + spec.n_test > series.n()) {
        throw std::invalid_argument("split: " + std::to_string(spec.n_train) + "+" +
                                    std::to_string(spec.n_test) + " points requested, series has " +
                                    std::to_string(series.n()));
    }
    TimeSeries train{series.values.topRows(spec.n_train), series.standardization};
    TimeSeries test{series.values.middleRows(spec.n_train, spec.n_test), series.standardization};
    return {std::move(train), std::move(test)};
}

} // namespace mvrkm
