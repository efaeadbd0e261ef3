#pragma once

// Dense matrix exponential by Pade(13) scaling and squaring, for use as a
// test oracle only. Deliberately shares no code with the library: the
// kernels under test go through an eigendecomposition, this one never does,
// so agreement between the two is meaningful.

#include <cmath>
#include <cstdlib>

#include <Eigen/Dense>

namespace oracle {

inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a_in) {
    static const double b[] = {64764752532480000.0, 32382376266240000.0,
                               7771770303897600.0,  1187353796428800.0,
                               129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,
                               1323241920.0,        40840800.0,
                               960960.0,            16380.0,
                               182.0,               1.0};
    const double theta13 = 5.371920351148152;

    const double norm1 = a_in.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > theta13) {
        squarings = std::max(
            0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
    }
    const Eigen::MatrixXd a = a_in / std::ldexp(1.0, squarings);
    const Eigen::Index n = a.rows();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

    const Eigen::MatrixXd a2 = a * a;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd a6 = a4 * a2;
    const Eigen::MatrixXd u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
             b[5] * a4 + b[3] * a2 + b[1] * id);
    const Eigen::MatrixXd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                              b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

    Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

}  // namespace oracle
