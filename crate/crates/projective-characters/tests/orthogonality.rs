use exact_lattice::{Cyclotomic, QZ};
use finite_group::CentralExtension;
use projective_characters::fixtures::{klein_bilinear, orthogonality_fixtures};
use projective_characters::{
    central_character_filter, character_table, irr_with_central_char, psi_central, twisted_orthogonality, OrthBranch,
};

fn all_psi(m: usize) -> Vec<QZ> {
    (0..m).map(|k| QZ::new(k as i64, m as i64)).collect()
}

#[test]
fn sweep_all_fixtures() {
    for (name, ext) in orthogonality_fixtures() {
        let e = ext.group();
        let mut blocks = 0;
        for psi in all_psi(ext.modulus()) {
            let set = irr_with_central_char(&ext, &psi).unwrap();
            assert_eq!(set.len(), set.regular_class_count(), "{name} psi={psi}");
            assert_eq!(set.sum_of_squares(), ext.base().order(), "{name} psi={psi}");
            for j in 0..set.len() {
                assert!(set.is_alpha_class_function(&set.projective_character(j)), "{name}");
            }
            blocks += set.len();
            for x in e.elements() {
                let pc = psi_central(&set, x);
                for y in e.elements() {
                    let r = twisted_orthogonality(&set, x, y);
                    if pc.centralizing {
                        assert!(r.agree, "{name} psi={psi} e={x} e'={y}: {} vs {}", r.table_side, r.formula_side);
                    } else {
                        assert!(r.table_side.is_zero(), "{name}: characters vanish off centralizing elements");
                    }
                }
            }
        }
        assert_eq!(blocks, set_total(&ext), "{name}: blocks partition Irr(E)");
    }
}

fn set_total(ext: &CentralExtension) -> usize {
    character_table(ext.group()).unwrap().num_characters()
}

#[test]
fn klein_identity_value_is_four() {
    let ext = CentralExtension::new(klein_bilinear());
    let set = irr_with_central_char(&ext, &QZ::new(1, 2)).unwrap();
    assert_eq!(set.len(), 1);
    let r = twisted_orthogonality(&set, 0, 0);
    assert_eq!(r.table_side, Cyclotomic::from_i64(4));
    assert_eq!(r.formula_side, Cyclotomic::from_i64(4));
    assert_eq!(r.branch, OrthBranch::Conjugate { g: 0, central: QZ::zero() });
}

#[test]
fn vanishing_branch() {
    let ext = CentralExtension::new(klein_bilinear());
    let set = irr_with_central_char(&ext, &QZ::zero()).unwrap();
    // in an abelian quotient, ebar' = 1 is not conjugate to ebar^{-1} != 1
    let e = ext.encode(&QZ::zero(), 1);
    let r = twisted_orthogonality(&set, e, 0);
    assert_eq!(r.branch, OrthBranch::Vanishing);
    assert!(r.formula_side.is_zero() && r.table_side.is_zero());
    assert!(r.holds());
}

#[test]
fn non_centralizing_lift_reported() {
    let ext = CentralExtension::new(klein_bilinear());
    let set = irr_with_central_char(&ext, &QZ::new(1, 2)).unwrap();
    let e = ext.encode(&QZ::zero(), 1);
    let pc = psi_central(&set, e);
    assert!(!pc.centralizing);
    assert!(pc.witness.is_some());
    // e e^{-1}... take e' = e^{-1}: the formula would give |Z_A| psi(1) = 4, the characters give 0
    let r = twisted_orthogonality(&set, e, ext.group().inv(e));
    assert!(!r.holds());
    assert!(r.table_side.is_zero());
    assert_eq!(r.formula_side, Cyclotomic::from_i64(4));
    assert!(!r.note.is_empty());
}

#[test]
fn trivial_cocycle_gives_irr_a() {
    let ext = CentralExtension::with_modulus(finite_group::Cocycle2::zero(finite_group::FiniteGroup::symmetric(3)), 1).unwrap();
    let set = irr_with_central_char(&ext, &QZ::zero()).unwrap();
    assert_eq!(set.degrees(), vec![1, 1, 2]);
}

#[test]
fn incompatible_central_character_is_empty() {
    let ext = CentralExtension::new(klein_bilinear());
    let t = character_table(ext.group()).unwrap();
    // values of central characters on 1/2 are square roots of unity; e(1/4) never occurs
    assert!(central_character_filter(&ext, &t, &QZ::new(1, 4)).is_empty());
    assert!(irr_with_central_char(&ext, &QZ::new(1, 4)).is_err());
}
