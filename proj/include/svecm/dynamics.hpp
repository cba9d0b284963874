#pragma once

#include "svecm/svec.hpp"
#include "svecm/vecm.hpp"

#include <armadillo>

#include <vector>

namespace svecm {

inline const std::vector<arma::uword> kDefaultFevdHorizons = {1, 2, 5, 10, 15, 20};

/// Moving-average matrices Phi_0 = I, Phi_h = sum_{j <= min(h,p)} A_j Phi_{h-j}.
/// Slice h of the result is Phi_h.
arma::cube ma_coefficients(const std::vector<arma::mat>& A, arma::uword H);

struct IrfResult {
    /// Slice h, entry (i, j): response of variable i to a one standard
    /// deviation shock j after h periods.
    arma::cube responses;
    bool accumulated = false;

    [[nodiscard]] arma::uword horizon() const { return responses.n_slices - 1; }
};

/// Theta_h = Phi_h B for h = 0..H; the accumulated variant sums over h.
IrfResult irf(const SvecModel& svec, const VecmModel& vecm, arma::uword H, bool accumulated = false);
IrfResult irf(const std::vector<arma::mat>& A, const arma::mat& B, arma::uword H, bool accumulated = false);

/// Responses of the differenced variables: Theta_0, Theta_1 - Theta_0, ...
arma::cube difference_responses(const arma::cube& theta);

struct FevdResult {
    std::vector<arma::uword> horizons;
    /// shares[k](i, j): share of variable i's horizons[k]-step forecast error
    /// variance due to shock j.
    std::vector<arma::mat> shares;
};

/// Step h sums Theta_s^2 over s = 0..h-1, so h = 1 uses the impact matrix
/// alone. Throws DegenerateVariance when a variable has zero variance.
FevdResult fevd_from_responses(const arma::cube& theta, const std::vector<arma::uword>& horizons);

FevdResult fevd(const SvecModel& svec, const VecmModel& vecm,
                const std::vector<arma::uword>& horizons = kDefaultFevdHorizons);

}  // namespace svecm
