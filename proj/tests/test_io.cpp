#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "pathlab/io.hpp"
#include "pathlab/mera.hpp"
#include "pathlab/rng.hpp"

using namespace pathlab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("pathlab_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

}  // namespace

TEST_CASE("doubles survive the round trip through their decimal form") {
    for (double x : {0.0, 1.0, -1.5, 0.1, 1.0 / 3.0, 6.02214076e23,
                     -2.2250738585072014e-308, 3.141592653589793}) {
        const std::string s = format_double(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
    // equal values format equally: byte-stability follows
    CHECK(format_double(0.1 + 0.2) == format_double(0.30000000000000004));
}

TEST_CASE("csv matrices come back bit-identical") {
    TempDir tmp;
    StreamRng rng(11, 0);
    Eigen::MatrixXd m(7, 3);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.normal();
    m(0, 0) = 0.0;
    m(1, 1) = -1e-300;

    const std::string path = tmp.file("m.csv");
    write_matrix_csv(path, m, {"a", "b", "c"});
    const Eigen::MatrixXd back = read_matrix_csv(path);
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);

    // same data, same bytes
    write_matrix_csv(tmp.file("m2.csv"), m, {"a", "b", "c"});
    CHECK(slurp(path) == slurp(tmp.file("m2.csv")));

    const std::string head = slurp(path).substr(0, 6);
    CHECK(head == "a,b,c\n");

    CHECK_THROWS_AS(write_matrix_csv(path, m, {"a", "b"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(read_matrix_csv(tmp.file("missing.csv")),
                    std::runtime_error);
}

TEST_CASE("complex matrices split into re/im column pairs") {
    TempDir tmp;
    Eigen::MatrixXcd m(2, 2);
    m << std::complex<double>(1.0, -2.0), std::complex<double>(0.0, 0.5),
        std::complex<double>(-3.25, 0.0), std::complex<double>(4.0, 4.0);
    const std::string path = tmp.file("c.csv");
    write_matrix_csv(path, m, {"u", "v"});
    const std::string text = slurp(path);
    CHECK(text.find("u_re,u_im,v_re,v_im") == 0);
    const Eigen::MatrixXd flat = read_matrix_csv(path);
    REQUIRE(flat.cols() == 4);
    CHECK(flat(0, 0) == 1.0);
    CHECK(flat(0, 1) == -2.0);
    CHECK(flat(1, 0) == -3.25);
    CHECK(flat(1, 1) == 0.0);
    CHECK(flat(1, 3) == 4.0);
}

TEST_CASE("json matrices and sidecars carry the expected fields") {
    TempDir tmp;
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 2.0, 3.0, 0.25;
    const nlohmann::json j = matrix_to_json(m);
    CHECK(j["rows"] == 2);
    CHECK(j["data"][1][0] == 3.0);

    const std::string path = tmp.file("m.json");
    write_json(path, j);
    const nlohmann::json back = read_json(path);
    CHECK(back["data"][0][1].get<double>() == 2.0);

    const nlohmann::json side =
        run_sidecar("tool", "sub", 42, {{"n", 16}});
    CHECK(side["seed"] == 42);
    CHECK(side["subcommand"] == "sub");
    CHECK(side["params"]["n"] == 16);
    CHECK(side.contains("build"));
    CHECK(side.contains("created"));
}

TEST_CASE("networks survive a json round trip with identical output") {
    TempDir tmp;
    const MeraNetwork net = random_network(8, 1, 77);
    const std::string path = tmp.file("net.json");
    write_json(path, network_to_json(net));
    const MeraNetwork back = network_from_json(read_json(path));

    REQUIRE(back.n_bottom == net.n_bottom);
    REQUIRE(back.layers.size() == net.layers.size());
    CHECK((back.top_state - net.top_state).cwiseAbs().maxCoeff() == 0.0);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        for (std::size_t i = 0; i < net.layers[l].isometries.size(); ++i)
            CHECK((back.layers[l].isometries[i].w -
                   net.layers[l].isometries[i].w)
                      .cwiseAbs()
                      .maxCoeff() == 0.0);
        for (std::size_t i = 0; i < net.layers[l].entanglers.size(); ++i)
            CHECK((back.layers[l].entanglers[i].u -
                   net.layers[l].entanglers[i].u)
                      .cwiseAbs()
                      .maxCoeff() == 0.0);
    }
    const Eigen::VectorXcd a = apply_network(net);
    const Eigen::VectorXcd b = apply_network(back);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}
