#pragma once

#include <armadillo>

namespace svecm {

/// Multivariate least-squares fit Y = X * coef + resid.
struct OlsFit {
    arma::mat coef;       // n_regressors x n_equations
    arma::mat residuals;  // n_obs x n_equations
    arma::mat xtx_inv;    // (X'X)^{-1}
};

/// Least squares via thin QR. Throws SingularRegression when X is
/// numerically rank deficient (|R_ii| below 1e-10 of the largest).
OlsFit ols(const arma::mat& X, const arma::mat& Y);

/// Residuals of Y after projecting out the columns of X. An empty X returns Y.
arma::mat partial_out(const arma::mat& Y, const arma::mat& X);

/// Orthonormal basis of the orthogonal complement of the column space of M
/// (K x (K - rank)).
arma::mat orthogonal_complement(const arma::mat& M);

/// Orthonormal basis of the null space {x : M x = 0}. Empty M yields I.
arma::mat null_space(const arma::mat& M, arma::uword n_cols);

/// Numerical rank with singular-value threshold rel_tol * max singular value.
arma::uword numerical_rank(const arma::mat& M, double rel_tol = 1e-10);

/// Commutation matrix K_{m,n}: K vec(A) = vec(A') for A m x n.
arma::mat commutation(arma::uword m, arma::uword n);

/// Row-wise first differences of a T x K matrix.
arma::mat diff_rows(const arma::mat& X);

}  // namespace svecm
