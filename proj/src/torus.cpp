#include "kolmo/torus.hpp"

#include <algorithm>
#include <cmath>

#include "kolmo/errors.hpp"

namespace kolmo {

namespace {

int cutoff(int n, double fraction) {
    const int k = static_cast<int>(std::floor(fraction * n / 2.0 + 1e-12));
    return std::clamp(k, 1, n / 2 - 1);
}

int padded(int n, int kmax) {
    int p = 3 * kmax + 1;
    if (p % 2) ++p;
    return std::max(n, p);
}

} // namespace

int TorusConfig::kmax_x() const { return cutoff(nx, dealias_fraction); }
int TorusConfig::kmax_y() const { return cutoff(ny, dealias_fraction); }
int TorusConfig::padded_nx() const { return padded(nx, kmax_x()); }
int TorusConfig::padded_ny() const { return padded(ny, kmax_y()); }

void TorusConfig::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw Error(ErrorKind::InvalidArgument, "alpha must be positive and finite");
    if (beta_inv < 1)
        throw Error(ErrorKind::InvalidArgument, "beta_inv must be a positive integer");
    if (nx < 4 || nx % 2)
        throw Error(ErrorKind::InvalidArgument, "nx must be even and >= 4, got " + std::to_string(nx));
    if (ny < 4 || ny % 2)
        throw Error(ErrorKind::InvalidArgument, "ny must be even and >= 4, got " + std::to_string(ny));
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "dealias_fraction must lie in (0, 1]");
}

} // namespace kolmo
