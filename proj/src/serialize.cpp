#include "ibc/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ibc {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(const std::vector<double>& row) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double x : row) cells.push_back(format_double(x));
    add_row_mixed(cells);
}

void CsvWriter::add_row_mixed(const std::vector<std::string>& row) {
    if (row.size() != header_.size())
        throw std::invalid_argument("csv: row width does not match header");
    rows_.push_back(row);
}

std::string CsvWriter::str() const {
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return os.str();
}

void CsvWriter::save(const std::filesystem::path& path) const { write_text(path, str()); }

nlohmann::json to_json(const Lattice& lat) {
    return nlohmann::json{{"N", lat.N}, {"g", lat.g}};
}

nlohmann::json to_json(const TwoStepReport& rep) {
    return nlohmann::json{{"epsilon", rep.epsilon},       {"t", rep.t},
                          {"m", rep.m},                   {"k", rep.k},
                          {"pilot_norm", rep.pilot_norm}, {"residual_norm", rep.residual_norm},
                          {"bound_rhs", rep.bound_rhs}};
}

std::string matrix_csv(const Eigen::MatrixXcd& A) {
    std::ostringstream os;
    os << A.rows() << ',' << A.cols() << '\n';
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            if (j) os << ',';
            os << format_double(A(i, j).real()) << ',' << format_double(A(i, j).imag());
        }
        os << '\n';
    }
    return os.str();
}

std::string pwlinear_csv(const PWLinear& f) {
    std::ostringstream os;
    os << "x,v\n";
    for (std::size_t i = 0; i < f.x.size(); ++i)
        os << format_double(f.x[i]) << ',' << format_double(f.v[i]) << '\n';
    return os.str();
}

std::string trigpoly_csv(const TrigPoly& f) {
    std::ostringstream os;
    for (int j = 1; j <= f.dim; ++j) os << 'k' << j << ',';
    os << "re,im\n";
    for (const auto& [k, c] : f.coeff) {
        for (int kj : k) os << kj << ',';
        os << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
    }
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace ibc
