//! The log-embedding rank of constructed central units never exceeds the
//! class-count rank, and reaches it on these groups.

use std::sync::Arc;

use zgunits::rank::rank_oracle;
use zgunits::shoda::complete_irredundant_set;
use zgunits::units::{bass_sweep_central_units, log_rank_witness, z_unit_for_pair, ZAttempt, ZLimits};
use zgunits::{catalog, AnalysisConfig};

#[test]
fn sweep_and_z_units_give_the_class_count() {
    for name in ["C15", "C21", "C24", "D10", "Dic5", "C3^2:C4", "C5^2"] {
        let g = Arc::new(catalog::build(name).unwrap());
        let set = complete_irredundant_set(&g, None, &AnalysisConfig::default()).unwrap();
        let mut units = bass_sweep_central_units(&g).unwrap();
        let mut z = 0;
        for p in &set.pairs {
            if let ZAttempt::Built(u, _) = z_unit_for_pair(&g, p, ZLimits::default()).unwrap() {
                units.push(u);
                z += 1;
            }
        }
        assert!(z > 0, "{name}");
        let w = log_rank_witness(&units, &set, 1e-6).unwrap();
        assert_eq!(w as i64, rank_oracle(&g), "{name}");
    }
}
