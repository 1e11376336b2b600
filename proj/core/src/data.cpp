#include "rhn/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "rhn/errors.hpp"
#include "rhn/rng.hpp"

namespace rhn {

std::string to_string(TargetFunction tf) {
    switch (tf) {
    case TargetFunction::Osc1D: return "osc1d";
    case TargetFunction::Osc2D: return "osc2d";
    case TargetFunction::Peaks1D: return "peaks";
    }
    throw ContractError("unknown target function");
}

TargetFunction target_from_string(std::string_view name) {
    if (name == "osc1d") return TargetFunction::Osc1D;
    if (name == "osc2d") return TargetFunction::Osc2D;
    if (name == "peaks") return TargetFunction::Peaks1D;
    throw ConfigError("unknown target function '" + std::string(name) +
                      "' (expected osc1d|osc2d|peaks)");
}

int tf_dimension(TargetFunction tf) {
    return tf == TargetFunction::Osc2D ? 2 : 1;
}

namespace {

double osc(double x) { return std::sin(20.0 * std::exp(x)) * x * x; }

double peaks(double x) {
    const double u = 10.0 * x - 4.0;
    const double v = 80.0 * x - 40.0;
    const double w = 80.0 * x - 20.0;
    return 0.2 * std::exp(-u * u) + 0.5 * std::exp(-v * v) + 0.3 * std::exp(-w * w);
}

} // namespace

double eval_target(TargetFunction tf, const Vector& x) {
    if (x.size() != tf_dimension(tf))
        throw ContractError("eval_target: point has " + std::to_string(x.size()) +
                            " coordinates, " + to_string(tf) + " needs " +
                            std::to_string(tf_dimension(tf)));
    for (Index k = 0; k < x.size(); ++k)
        if (!(x[k] >= 0.0 && x[k] <= 1.0))
            throw ContractError("eval_target: coordinate " + std::to_string(x[k]) +
                                " outside the unit cube");
    switch (tf) {
    case TargetFunction::Osc1D: return osc(x[0]);
    case TargetFunction::Osc2D: return osc(x[0]) + osc(x[1]);
    case TargetFunction::Peaks1D: return peaks(x[0]);
    }
    throw ContractError("unknown target function");
}

Dataset make_synthetic(TargetFunction tf, Index N, double noise_half_width, uint64_t seed) {
    if (N < 1)
        throw ConfigError("sample count must be >= 1");
    if (noise_half_width < 0.0)
        throw ConfigError("noise half-width must be >= 0");

    const int dim = tf_dimension(tf);
    Rng rng(seed);
    Dataset ds;
    ds.X.resize(N, dim);
    ds.Y.resize(N);
    Vector x(dim);
    for (Index l = 0; l < N; ++l) {
        for (int k = 0; k < dim; ++k)
            x[k] = rng.unit();
        ds.X.row(l) = x.transpose();
        double y = eval_target(tf, x);
        if (noise_half_width > 0.0)
            y += rng.uniform(-noise_half_width, noise_half_width);
        ds.Y[l] = y;
    }
    ds.names.assign(static_cast<size_t>(dim), "x");
    if (dim == 2) {
        ds.names[0] = "x1";
        ds.names[1] = "x2";
    }
    ds.provenance = "synthetic:" + to_string(tf);
    return ds;
}

Matrix grid_points(int dim, Index count_per_axis) {
    if (dim != 1 && dim != 2)
        throw ConfigError("grid dimension must be 1 or 2");
    if (count_per_axis < 2)
        throw ConfigError("grid needs at least 2 points per axis");

    const double step = 1.0 / static_cast<double>(count_per_axis - 1);
    if (dim == 1) {
        Matrix g(count_per_axis, 1);
        for (Index i = 0; i < count_per_axis; ++i)
            g(i, 0) = std::min(1.0, static_cast<double>(i) * step);
        return g;
    }
    Matrix g(count_per_axis * count_per_axis, 2);
    Index row = 0;
    for (Index i = 0; i < count_per_axis; ++i)
        for (Index j = 0; j < count_per_axis; ++j) {
            g(row, 0) = std::min(1.0, static_cast<double>(i) * step);
            g(row, 1) = std::min(1.0, static_cast<double>(j) * step);
            ++row;
        }
    return g;
}

Dataset grid_dataset(TargetFunction tf, Index count_per_axis) {
    Dataset ds;
    ds.X = grid_points(tf_dimension(tf), count_per_axis);
    ds.Y.resize(ds.X.rows());
    for (Index l = 0; l < ds.X.rows(); ++l)
        ds.Y[l] = eval_target(tf, ds.X.row(l).transpose());
    ds.names.assign(1, "x");
    if (tf_dimension(tf) == 2)
        ds.names = {"x1", "x2"};
    ds.provenance = "grid:" + to_string(tf);
    return ds;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction, uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("train fraction must be strictly between 0 and 1");
    const Index N = ds.size();
    if (N < 2)
        throw ContractError("split: need at least 2 rows");
    const auto n_train = static_cast<Index>(
        std::llround(train_fraction * static_cast<double>(N)));
    if (n_train < 1 || n_train >= N)
        throw ConfigError("split leaves an empty part (" + std::to_string(n_train) + " of " +
                          std::to_string(N) + " rows in the training part)");

    std::vector<Index> idx(static_cast<size_t>(N));
    std::iota(idx.begin(), idx.end(), Index{0});
    Rng rng(seed);
    for (Index i = N - 1; i > 0; --i) {
        const auto j = static_cast<Index>(rng.below(static_cast<uint64_t>(i + 1)));
        std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    }

    auto take = [&](Index begin, Index end, const char* tag) {
        Dataset part;
        part.X.resize(end - begin, ds.dim());
        part.Y.resize(end - begin);
        for (Index i = begin; i < end; ++i) {
            part.X.row(i - begin) = ds.X.row(idx[static_cast<size_t>(i)]);
            part.Y[i - begin] = ds.Y[idx[static_cast<size_t>(i)]];
        }
        part.names = ds.names;
        part.provenance = ds.provenance + ":" + tag;
        return part;
    };
    return {take(0, n_train, "train"), take(n_train, N, "test")};
}

namespace {

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (const char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    cells.push_back(cell);
    for (auto& s : cells) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    }
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && !s.empty();
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    size_t ncols = 0;
};

CsvTable parse_csv(const std::string& path, bool has_header) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open '" + path + "' for reading");

    CsvTable table;
    std::string line;
    size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        auto cells = split_cells(line);
        if (has_header && table.header.empty() && table.rows.empty()) {
            table.header = std::move(cells);
            table.ncols = table.header.size();
            continue;
        }
        if (table.ncols == 0)
            table.ncols = cells.size();
        if (cells.size() != table.ncols)
            throw FormatError("'" + path + "' line " + std::to_string(line_no) + ": " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(table.ncols));
        std::vector<double> row(table.ncols);
        for (size_t c = 0; c < table.ncols; ++c)
            if (!parse_double(cells[c], row[c]))
                throw FormatError("'" + path + "' line " + std::to_string(line_no) +
                                  ", column " + std::to_string(c + 1) + ": '" + cells[c] +
                                  "' is not numeric");
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty())
        throw FormatError("'" + path + "' contains no data rows");
    return table;
}

} // namespace

Matrix load_csv_features(const std::string& path, bool has_header) {
    const CsvTable table = parse_csv(path, has_header);
    Matrix X(static_cast<Index>(table.rows.size()), static_cast<Index>(table.ncols));
    for (size_t l = 0; l < table.rows.size(); ++l)
        for (size_t c = 0; c < table.ncols; ++c)
            X(static_cast<Index>(l), static_cast<Index>(c)) = table.rows[l][c];
    if (!X.allFinite())
        throw FormatError("'" + path + "' contains non-finite values");
    return X;
}

Dataset load_csv(const std::string& path, const std::string& target_column, bool has_header) {
    CsvTable table = parse_csv(path, has_header);
    const auto& header = table.header;
    const auto& rows = table.rows;
    const size_t ncols = table.ncols;
    if (ncols < 2)
        throw FormatError("'" + path + "' needs at least two columns (features and target)");

    // Target designator: a column index if numeric, else a header name.
    size_t target = ncols;
    if (!target_column.empty() &&
        target_column.find_first_not_of("0123456789") == std::string::npos) {
        target = static_cast<size_t>(std::stoul(target_column));
        if (target >= ncols)
            throw ConfigError("target column index " + target_column + " out of range (" +
                              std::to_string(ncols) + " columns)");
    } else {
        const auto it = std::find(header.begin(), header.end(), target_column);
        if (it == header.end())
            throw ConfigError("target column '" + target_column + "' not found" +
                              (has_header ? "" : " (file has no header; use an index)"));
        target = static_cast<size_t>(it - header.begin());
    }

    Dataset ds;
    const auto N = static_cast<Index>(rows.size());
    ds.X.resize(N, static_cast<Index>(ncols - 1));
    ds.Y.resize(N);
    for (Index l = 0; l < N; ++l) {
        Index k = 0;
        for (size_t c = 0; c < ncols; ++c) {
            if (c == target)
                ds.Y[l] = rows[static_cast<size_t>(l)][c];
            else
                ds.X(l, k++) = rows[static_cast<size_t>(l)][c];
        }
    }
    for (size_t c = 0; c < ncols; ++c) {
        if (c == target)
            continue;
        ds.names.push_back(header.empty() ? "c" + std::to_string(c) : header[c]);
    }
    if (!ds.X.allFinite() || !ds.Y.allFinite())
        throw FormatError("'" + path + "' contains non-finite values");
    ds.provenance = path;
    return ds;
}

} // namespace rhn
