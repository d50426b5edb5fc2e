//! Benchmark inputs for conelab. The benches live in `benches/`.

use conelab::catalog::qpn;
use conelab::Cone;

/// Fresh `Q_p^n` cones, with no cached descriptions.
pub fn qpn_family() -> Vec<(String, Cone)> {
    [(4, 2), (4, 3), (5, 3), (6, 2), (6, 4)]
        .into_iter()
        .map(|(n, p)| (format!("qpn({n},{p})"), qpn(n, p).expect("valid parameters")))
        .collect()
}
