#pragma once

namespace rg2 {

/// Real branches of the Lambert W function, the inverse of w -> w*e^w.
/// Principal (W_0) covers z >= -1/e with values w >= -1; MinusOne (W_{-1})
/// covers -1/e <= z < 0 with values w <= -1.
enum class WBranch { Principal, MinusOne };

/// Evaluate W on the requested branch. Throws std::domain_error outside the
/// branch domain. The result w satisfies |w*e^w - z| <= 1e-12 * max(1, |z|).
double lambert_w(WBranch branch, double z);

} // namespace rg2
