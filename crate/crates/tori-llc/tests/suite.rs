use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tori_llc::fixtures::{element_pairs, random_suite, SuiteBounds};
use tori_llc::{character_identity, compute_h, extensions, packet, verify_iso, verify_iso_flipped};

#[test]
fn random_cases_satisfy_the_extension_identity() {
    let suite = random_suite(11, 60, &SuiteBounds::default());
    let mut discriminating = 0;
    for (i, g) in suite.iter().enumerate() {
        let h = compute_h(&g.case).unwrap();
        let r = verify_iso(&g.case, &h);
        assert!(r.holds(), "case {i} ({}): {:?}", g.group, r.failures().next());
        if !verify_iso_flipped(&g.case, &h).holds() {
            discriminating += 1;
        }
    }
    assert!(suite.iter().any(|g| g.group == "S3"));
    // the flipped sign must be caught somewhere, otherwise the suite does not see the pairing
    assert!(discriminating > 10, "only {discriminating} cases detect the flipped sign");
}

#[test]
fn random_cases_satisfy_the_character_identity() {
    let bounds = SuiteBounds {
        max_component: 6,
        ..SuiteBounds::default()
    };
    let suite = random_suite(5, 30, &bounds);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut total, mut vanishing, mut nonzero) = (0, 0, 0);
    for (i, g) in suite.iter().enumerate() {
        let h = compute_h(&g.case).unwrap();
        let ext = extensions(&h).unwrap();
        let pk = packet(&g.case, &h, &ext);
        assert!(pk.holds(), "case {i} ({}): {pk:?}", g.group);
        for pair in element_pairs(&mut rng, &g.case, 2) {
            let rep = character_identity(&g.case, &h, &ext, &pair).unwrap();
            assert!(rep.holds(), "case {i} ({}): {rep:?}", g.group);
            total += 1;
            if rep.vanishing() {
                vanishing += 1;
                assert!(rep.representation.is_zero());
            }
            if !rep.closed_form.is_zero() {
                nonzero += 1;
            }
        }
    }
    assert!(vanishing > 0 && nonzero > 0, "{total} {vanishing} {nonzero}");
}
