#include "eqdisc/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace eqdisc {

namespace {

constexpr std::size_t kMinPoints = 5;
constexpr double kUniformTol = 1e-12;

void check_axis(const std::vector<double>& axis, const char* name, double* spacing) {
    if (axis.size() < kMinPoints) {
        throw ConfigError(std::string(name) + " axis has " + std::to_string(axis.size()) +
                          " points, need at least " + std::to_string(kMinPoints));
    }
    const double mean = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
    if (!(mean > 0.0)) {
        throw ConfigError(std::string(name) + " axis is not strictly increasing");
    }
    for (std::size_t i = 1; i < axis.size(); ++i) {
        const double d = axis[i] - axis[i - 1];
        if (!(d > 0.0)) {
            throw ConfigError(std::string(name) + " axis is not strictly increasing at index " +
                              std::to_string(i));
        }
        if (std::abs(d - mean) > kUniformTol * std::abs(mean)) {
            throw DataError(std::string(name) + " axis is non-uniform at index " +
                            std::to_string(i));
        }
    }
    *spacing = mean;
}

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw DataError("non-numeric cell at row " + std::to_string(row) + " column " +
                        std::to_string(col));
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

} // namespace

Grid::Grid(std::vector<double> t_axis, std::vector<double> x_axis)
    : t_(std::move(t_axis)), x_(std::move(x_axis)) {
    check_axis(t_, "time", &dt_);
    check_axis(x_, "space", &dx_);
}

GridPtr build_uniform_grid(std::pair<double, double> t_range,
                           std::pair<double, double> x_range,
                           std::size_t nt, std::size_t nx) {
    if (!(t_range.second > t_range.first)) {
        throw ConfigError("degenerate time range");
    }
    if (!(x_range.second > x_range.first)) {
        throw ConfigError("degenerate space range");
    }
    if (nt < kMinPoints) {
        throw ConfigError("nt=" + std::to_string(nt) + " below minimum of " +
                          std::to_string(kMinPoints));
    }
    if (nx < kMinPoints) {
        throw ConfigError("nx=" + std::to_string(nx) + " below minimum of " +
                          std::to_string(kMinPoints));
    }
    auto linspace = [](double lo, double hi, std::size_t n) {
        std::vector<double> axis(n);
        for (std::size_t i = 0; i < n; ++i) {
            axis[i] = lo + (static_cast<double>(i) * (hi - lo)) / static_cast<double>(n - 1);
        }
        return axis;
    };
    return std::make_shared<Grid>(linspace(t_range.first, t_range.second, nt),
                                  linspace(x_range.first, x_range.second, nx));
}

Field::Field(GridPtr grid, Eigen::MatrixXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) {
        throw ConfigError("field requires a grid");
    }
    if (values_.rows() != static_cast<Eigen::Index>(grid_->nt()) ||
        values_.cols() != static_cast<Eigen::Index>(grid_->nx())) {
        throw DataError("field shape (" + std::to_string(values_.rows()) + ", " +
                        std::to_string(values_.cols()) + ") does not match grid (" +
                        std::to_string(grid_->nt()) + ", " + std::to_string(grid_->nx()) + ")");
    }
    if (!values_.allFinite()) {
        throw DataError("field contains non-finite values");
    }
}

std::string field_to_csv(const Field& field) {
    const Grid& g = field.grid();
    std::string out;
    out.reserve(g.nt() * (g.nx() + 1) * 20);
    out += "t\\x";
    for (double x : g.x_axis()) {
        out += ',';
        out += format17(x);
    }
    out += '\n';
    for (std::size_t i = 0; i < g.nt(); ++i) {
        out += format17(g.t_axis()[i]);
        for (std::size_t j = 0; j < g.nx(); ++j) {
            out += ',';
            out += format17(field.values()(static_cast<Eigen::Index>(i),
                                           static_cast<Eigen::Index>(j)));
        }
        out += '\n';
    }
    return out;
}

void save_field(const Field& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot open " + path.string() + " for writing");
    }
    out << field_to_csv(field);
    if (!out) {
        throw DataError("write failed for " + path.string());
    }
}

Field load_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError(path.string() + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "t\\x") {
        throw DataError(path.string() + ": malformed header, expected leading cell t\\x");
    }
    const std::size_t ncols = header.size();
    std::vector<double> x_axis(ncols - 1);
    for (std::size_t j = 1; j < ncols; ++j) {
        x_axis[j - 1] = parse_cell(header[j], 0, j + 1);
    }

    std::vector<double> t_axis;
    std::vector<std::vector<double>> rows;
    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() && in.eof()) {
            break;
        }
        ++data_row;
        auto cells = split_csv_line(line);
        if (cells.size() != ncols) {
            throw DataError(path.string() + ": row " + std::to_string(data_row) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(ncols));
        }
        t_axis.push_back(parse_cell(cells[0], data_row, 1));
        std::vector<double> vals(ncols - 1);
        for (std::size_t j = 1; j < ncols; ++j) {
            vals[j - 1] = parse_cell(cells[j], data_row, j + 1);
        }
        rows.push_back(std::move(vals));
    }

    GridPtr grid;
    try {
        grid = std::make_shared<Grid>(std::move(t_axis), std::move(x_axis));
    } catch (const ConfigError& e) {
        throw DataError(path.string() + ": " + e.what());
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    Eigen::MatrixXd values(rows.size(), ncols - 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j + 1 < ncols; ++j) {
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return Field(std::move(grid), std::move(values));
}

} // namespace eqdisc
