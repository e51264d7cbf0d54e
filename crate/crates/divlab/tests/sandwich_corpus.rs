//! Every tabulated constant, used as the binding side of the sandwich
//! bound with the other side left trivial, must hold on the standard
//! 10,000-pair corpus.

use divlab::bounds::{constant_fixtures, verify_sandwich, ExtremumKind};
use divlab::dist::PairSampler;

#[test]
fn every_fixture_constant_bounds_the_corpus() {
    let pairs = PairSampler::new(42, (2, 64), 1e6).unwrap().take_pairs(10_000);
    for fixture in constant_fixtures() {
        let (lower, upper) = match fixture.kind {
            ExtremumKind::Infimum => (fixture.analytic, f64::INFINITY),
            ExtremumKind::Supremum => (0.0, fixture.analytic),
        };
        let violations =
            verify_sandwich(fixture.numerator, fixture.denominator, lower, upper, &pairs).unwrap();
        assert!(
            violations.is_empty(),
            "{}/{} with [{lower}, {upper}]: {} violations, first {:?}",
            fixture.numerator.key(),
            fixture.denominator.key(),
            violations.len(),
            violations.first()
        );
    }
}
