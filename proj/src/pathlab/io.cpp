#include "pathlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef PATHLAB_BUILD_ID
#define PATHLAB_BUILD_ID "unknown"
#endif

namespace pathlab {

std::string format_double(double x) {
    char buf[40];
    // shortest precision that still round-trips exactly
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // '\n' stays '\n' everywhere
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

void write_header(std::ofstream& f, const std::vector<std::string>& columns) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) f << ',';
        f << columns[c];
    }
    f << '\n';
}

}  // namespace

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& columns) {
    if (static_cast<Eigen::Index>(columns.size()) != m.cols())
        throw std::invalid_argument(
            "write_matrix_csv: column name count mismatch");
    std::ofstream f = open_out(path);
    write_header(f, columns);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) f << ',';
            f << format_double(m(i, j));
        }
        f << '\n';
    }
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m,
                      const std::vector<std::string>& columns) {
    if (static_cast<Eigen::Index>(columns.size()) != m.cols())
        throw std::invalid_argument(
            "write_matrix_csv: column name count mismatch");
    std::vector<std::string> split;
    split.reserve(2 * columns.size());
    for (const auto& c : columns) {
        split.push_back(c + "_re");
        split.push_back(c + "_im");
    }
    std::ofstream f = open_out(path);
    write_header(f, split);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) f << ',';
            f << format_double(m(i, j).real()) << ','
              << format_double(m(i, j).imag());
        }
        f << '\n';
    }
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(f, line))
        throw std::runtime_error("empty csv: " + path);
    std::vector<std::vector<double>> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(std::strtod(cell.c_str(), nullptr));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("ragged csv: " + path);
        rows.push_back(std::move(row));
    }
    Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
    return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json data = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        data.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
    nlohmann::json data = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        data.push_back(std::move(row));
    }
    return {{"rows", m.rows()},
            {"cols", m.cols()},
            {"complex", true},
            {"data", std::move(data)}};
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream f = open_out(path);
    f << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    return nlohmann::json::parse(f);
}

nlohmann::json run_sidecar(const std::string& tool,
                           const std::string& subcommand, std::uint64_t seed,
                           const nlohmann::json& params) {
    char stamp[32] = "unknown";
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    if (gmtime_r(&now, &utc))
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return {{"tool", tool},        {"subcommand", subcommand},
            {"seed", seed},        {"params", params},
            {"build", PATHLAB_BUILD_ID}, {"created", stamp}};
}

namespace {

nlohmann::json cvec_to_json(const Eigen::VectorXcd& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back({v[i].real(), v[i].imag()});
    return out;
}

Eigen::VectorXcd cvec_from_json(const nlohmann::json& j) {
    Eigen::VectorXcd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = {j[i][0].get<double>(),
                                           j[i][1].get<double>()};
    return v;
}

template <typename Mat>
nlohmann::json cmat_to_json(const Mat& m) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        out.push_back(std::move(row));
    }
    return out;
}

template <typename Mat>
Mat cmat_from_json(const nlohmann::json& j) {
    Mat m;
    if (j.size() != static_cast<std::size_t>(m.rows()))
        throw std::runtime_error("network json: wrong tensor shape");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (row.size() != static_cast<std::size_t>(m.cols()))
            throw std::runtime_error("network json: wrong tensor shape");
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            m(i, c) = {row[static_cast<std::size_t>(c)][0].get<double>(),
                       row[static_cast<std::size_t>(c)][1].get<double>()};
    }
    return m;
}

}  // namespace

nlohmann::json network_to_json(const MeraNetwork& net) {
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& layer : net.layers) {
        nlohmann::json isos = nlohmann::json::array();
        for (const auto& iso : layer.isometries)
            isos.push_back(cmat_to_json(iso.w));
        nlohmann::json ents = nlohmann::json::array();
        for (const auto& ent : layer.entanglers)
            ents.push_back(cmat_to_json(ent.u));
        layers.push_back(
            {{"isometries", std::move(isos)}, {"entanglers", std::move(ents)}});
    }
    return {{"n_top", net.n_top},
            {"n_bottom", net.n_bottom},
            {"top_state", cvec_to_json(net.top_state)},
            {"layers", std::move(layers)}};
}

MeraNetwork network_from_json(const nlohmann::json& j) {
    MeraNetwork net;
    net.n_top = j.at("n_top").get<std::size_t>();
    net.n_bottom = j.at("n_bottom").get<std::size_t>();
    net.top_state = cvec_from_json(j.at("top_state"));
    for (const auto& lj : j.at("layers")) {
        MeraLayer layer;
        for (const auto& ij : lj.at("isometries")) {
            Isometry iso;
            iso.w = cmat_from_json<Eigen::Matrix<Amp, 2, 4>>(ij);
            layer.isometries.push_back(iso);
        }
        for (const auto& ej : lj.at("entanglers")) {
            Disentangler ent;
            ent.u = cmat_from_json<Eigen::Matrix<Amp, 4, 4>>(ej);
            layer.entanglers.push_back(ent);
        }
        net.layers.push_back(std::move(layer));
    }
    return net;
}

}  // namespace pathlab
