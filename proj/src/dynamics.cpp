#include "svecm/dynamics.hpp"

#include "svecm/error.hpp"

#include <algorithm>

namespace svecm {

arma::cube ma_coefficients(const std::vector<arma::mat>& A, arma::uword H) {
    if (A.empty()) {
        throw Error(ErrorCode::InvalidArgument, "need at least one VAR coefficient matrix");
    }
    const arma::uword K = A.front().n_rows;
    arma::cube phi(K, K, H + 1, arma::fill::zeros);
    phi.slice(0) = arma::eye(K, K);
    for (arma::uword h = 1; h <= H; ++h) {
        const arma::uword top = std::min<arma::uword>(h, A.size());
        for (arma::uword j = 1; j <= top; ++j) {
            phi.slice(h) += A[j - 1] * phi.slice(h - j);
        }
    }
    return phi;
}

IrfResult irf(const std::vector<arma::mat>& A, const arma::mat& B, arma::uword H, bool accumulated) {
    if (H < 1) {
        throw Error(ErrorCode::InvalidArgument, "horizon must be at least 1");
    }
    const arma::cube phi = ma_coefficients(A, H);
    IrfResult out;
    out.accumulated = accumulated;
    out.responses.set_size(B.n_rows, B.n_cols, H + 1);
    for (arma::uword h = 0; h <= H; ++h) {
        out.responses.slice(h) = phi.slice(h) * B;
        if (accumulated && h > 0) {
            out.responses.slice(h) += out.responses.slice(h - 1);
        }
    }
    return out;
}

IrfResult irf(const SvecModel& svec, const VecmModel& vecm, arma::uword H, bool accumulated) {
    return irf(to_level_var(vecm), svec.b, H, accumulated);
}

arma::cube difference_responses(const arma::cube& theta) {
    arma::cube d = theta;
    for (arma::uword h = 1; h < theta.n_slices; ++h) {
        d.slice(h) = theta.slice(h) - theta.slice(h - 1);
    }
    return d;
}

FevdResult fevd_from_responses(const arma::cube& theta, const std::vector<arma::uword>& horizons) {
    if (horizons.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no FEVD horizons given");
    }
    const arma::uword max_h = *std::max_element(horizons.begin(), horizons.end());
    if (*std::min_element(horizons.begin(), horizons.end()) < 1 || max_h > theta.n_slices) {
        throw Error(ErrorCode::InvalidArgument, "FEVD horizons must lie in 1.." + std::to_string(theta.n_slices));
    }
    // cum.slice(h-1) = sum_{s<h} Theta_s^2
    arma::cube cum(theta.n_rows, theta.n_cols, max_h);
    arma::mat acc(theta.n_rows, theta.n_cols, arma::fill::zeros);
    for (arma::uword s = 0; s < max_h; ++s) {
        acc += arma::square(theta.slice(s));
        cum.slice(s) = acc;
    }
    FevdResult out;
    out.horizons = horizons;
    for (arma::uword h : horizons) {
        arma::mat m = cum.slice(h - 1);
        const arma::vec total = arma::sum(m, 1);
        for (arma::uword i = 0; i < m.n_rows; ++i) {
            if (!(total(i) > 0.0)) {
                throw Error(ErrorCode::DegenerateVariance,
                            "variable " + std::to_string(i + 1) + " has zero forecast error variance");
            }
            m.row(i) /= total(i);
        }
        out.shares.push_back(std::move(m));
    }
    return out;
}

FevdResult fevd(const SvecModel& svec, const VecmModel& vecm, const std::vector<arma::uword>& horizons) {
    if (horizons.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no FEVD horizons given");
    }
    const arma::uword max_h = *std::max_element(horizons.begin(), horizons.end());
    return fevd_from_responses(irf(svec, vecm, std::max<arma::uword>(max_h, 1)).responses, horizons);
}

}  // namespace svecm
