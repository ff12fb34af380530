#include "greensign/linalg.hpp"

namespace greensign {

double normalized_determinant(const Eigen::MatrixXd& B) {
    Eigen::MatrixXd S = B;
    for (Eigen::Index i = 0; i < S.rows(); ++i) {
        double nr = S.row(i).norm();
        if (nr == 0.0) return 0.0;
        S.row(i) /= nr;
    }
    return S.fullPivLu().determinant();
}

} // namespace greensign
