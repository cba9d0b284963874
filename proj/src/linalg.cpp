#include "svecm/linalg.hpp"

#include "svecm/error.hpp"

#include <algorithm>
#include <cmath>

namespace svecm {

OlsFit ols(const arma::mat& X, const arma::mat& Y) {
    if (X.n_rows != Y.n_rows) {
        throw Error(ErrorCode::InvalidArgument, "regressor and response row counts differ");
    }
    if (X.n_rows < X.n_cols) {
        throw Error(ErrorCode::TooShort, "fewer observations than regressors");
    }
    arma::mat Q;
    arma::mat R;
    if (!arma::qr_econ(Q, R, X)) {
        throw Error(ErrorCode::SingularRegression, "QR decomposition failed");
    }
    const arma::vec diag = arma::abs(R.diag());
    const double largest = diag.empty() ? 0.0 : diag.max();
    if (largest == 0.0 || diag.min() <= 1e-10 * largest) {
        throw Error(ErrorCode::SingularRegression, "regressor matrix is rank deficient");
    }
    OlsFit fit;
    const arma::mat R_inv = arma::solve(arma::trimatu(R), arma::eye(R.n_rows, R.n_cols));
    fit.coef = R_inv * (Q.t() * Y);
    fit.residuals = Y - X * fit.coef;
    fit.xtx_inv = R_inv * R_inv.t();
    return fit;
}

arma::mat partial_out(const arma::mat& Y, const arma::mat& X) {
    if (X.n_cols == 0) {
        return Y;
    }
    return ols(X, Y).residuals;
}

arma::mat orthogonal_complement(const arma::mat& M) {
    const arma::uword k = M.n_rows;
    if (M.n_cols == 0) {
        return arma::eye(k, k);
    }
    arma::mat U;
    arma::vec s;
    arma::mat V;
    arma::svd(U, s, V, M);
    const double tol = (s.empty() ? 0.0 : s.max()) * 1e-10;
    arma::uword rank = 0;
    for (arma::uword i = 0; i < s.n_elem; ++i) {
        if (s(i) > tol) {
            ++rank;
        }
    }
    if (rank == k) {
        return arma::mat(k, 0);
    }
    return U.cols(rank, k - 1);
}

arma::mat null_space(const arma::mat& M, arma::uword n_cols) {
    if (M.n_rows == 0) {
        return arma::eye(n_cols, n_cols);
    }
    return orthogonal_complement(M.t());
}

arma::uword numerical_rank(const arma::mat& M, double rel_tol) {
    if (M.is_empty()) {
        return 0;
    }
    const arma::vec s = arma::svd(M);
    const double tol = s.max() * rel_tol;
    return static_cast<arma::uword>(arma::accu(s > tol));
}

arma::mat commutation(arma::uword m, arma::uword n) {
    arma::mat K(m * n, m * n, arma::fill::zeros);
    for (arma::uword i = 0; i < m; ++i) {
        for (arma::uword j = 0; j < n; ++j) {
            // vec(A)[j*m + i] = A(i,j) -> vec(A')[i*n + j]
            K(i * n + j, j * m + i) = 1.0;
        }
    }
    return K;
}

arma::mat diff_rows(const arma::mat& X) {
    if (X.n_rows < 2) {
        return arma::mat(0, X.n_cols);
    }
    return X.rows(1, X.n_rows - 1) - X.rows(0, X.n_rows - 2);
}

}  // namespace svecm
