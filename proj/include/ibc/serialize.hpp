#pragma once

#include "ibc/cone.hpp"
#include "ibc/korobov.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace ibc {

/// Locale-independent shortest-exact formatting (17 significant digits).
std::string format_double(double x);

/// Row-oriented CSV writer; every numeric cell goes through format_double.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<double>& row);
    void add_row_mixed(const std::vector<std::string>& row);
    std::string str() const;
    void save(const std::filesystem::path& path) const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

nlohmann::json to_json(const Lattice& lat);
nlohmann::json to_json(const TwoStepReport& rep);

/// results.csv texture for matrices: "rows,cols" header line then row-major
/// entries (Re and Im columns for complex input).
std::string matrix_csv(const Eigen::MatrixXcd& A);

/// Breakpoint/value pairs, one per line.
std::string pwlinear_csv(const PWLinear& f);

/// One row per mode: k_1,...,k_d,Re,Im.
std::string trigpoly_csv(const TrigPoly& f);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ibc
