#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "pathlab/mera.hpp"

namespace pathlab {

// Shortest exact decimal form of a double ("%.17g" trimmed): parsing it
// back returns the identical bits, and equal inputs give equal strings, so
// emitted CSV bodies are reproducible byte for byte.
std::string format_double(double x);

// CSV layout: one header row of column names, then data rows, '\n' line
// endings, no trailing newline variance, no timestamps. Two runs with equal
// data produce identical bytes.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& columns);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m,
                      const std::vector<std::string>& columns);

Eigen::MatrixXd read_matrix_csv(const std::string& path);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

// Run metadata written next to data files; the only place a timestamp
// appears.
nlohmann::json run_sidecar(const std::string& tool,
                           const std::string& subcommand, std::uint64_t seed,
                           const nlohmann::json& params);

nlohmann::json network_to_json(const MeraNetwork& net);
MeraNetwork network_from_json(const nlohmann::json& j);

}  // namespace pathlab
