// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace rinorm::special {

/// log(erfc(x)) for x >= 0, accurate far into the tail where erfc underflows.
long double log_erfc(long double x);

/// Inverse of erfc on (0, 1]: returns x >= 0 with erfc(x) = z.
///
/// A rational starting guess is polished by Newton steps until the
/// relative residual |erfc(x)/z - 1| drops below 1e-14 (in practice it
/// reaches working precision).
long double erfc_inv(long double z);

/// Same as erfc_inv but takes log(z), so z may be far below the smallest
/// representable double (z = exp(log_z), log_z <= 0).
long double erfc_inv_log(long double log_z);

}  // namespace rinorm::special
