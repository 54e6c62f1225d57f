use qdc_core::calculus::{Calculus, Terms};
use qdc_core::cyclo::CycNum;
use qdc_core::double::{dstar_group_element, CrossedModule};
use qdc_core::exterior::{braiding, ExteriorData, ExteriorError, Form, DEFAULT_MAX_DIM};
use qdc_core::group::{FiniteGroup, Section};
use qdc_core::rep::{Family, Representation};

fn build(basepoint: &str, fam: Family, n_max: usize) -> ExteriorData {
    let g = FiniteGroup::builtin("S3").unwrap();
    let b = g.find_element(basepoint).unwrap();
    let sec = Section::default_for(&g, &g.class_of(b));
    let rep = Representation::builtin(&g.centralizer(sec.basepoint()).group, &fam).unwrap();
    let calc = Calculus::build(&CrossedModule::new(&g, &sec, &rep).unwrap()).unwrap();
    ExteriorData::build(calc, n_max, DEFAULT_MAX_DIM).unwrap()
}

fn nine(q: i64, n_max: usize) -> ExteriorData {
    let fam = if q == 1 {
        Family::Trivial
    } else {
        Family::Cyclic { n: 2, k: 1 }
    };
    build("(12)", fam, n_max)
}

#[test]
fn psi_is_not_an_involution() {
    let ext = nine(-1, 1);
    let p = ext.braid.matrix();
    assert!(!p.matmul(&p).is_identity());
}

#[test]
fn psi_fixes_theta_tensor_theta() {
    for q in [1, -1] {
        let ext = nine(q, 1);
        let m = ext.calc.m();
        let diag: Vec<usize> = (0..m).map(|a| a * m + a).collect();
        let tt: Vec<(usize, CycNum)> = {
            let ext = &ext;
            let mut v: Vec<usize> = diag
                .iter()
                .flat_map(|&x| diag.iter().map(move |&y| ext.tensor(&[x, y])))
                .collect();
            v.sort();
            v.into_iter().map(|j| (j, CycNum::one())).collect()
        };
        assert_eq!(ext.braid.apply_at(1, 2, &tt), tt);
    }
}

#[test]
fn wedge_and_d_examples() {
    let ext = nine(1, 3);
    let g = ext.calc.module.group.clone();
    let m = ext.calc.m();
    // e_a ∧ e_a = 0
    for a in 0..m {
        let ea = ext.form_from_tensor(1, &ext.calc.label_form(a * m + a));
        assert!(ext.wedge(&ea, &ea).terms.is_zero());
    }
    let th = ext.theta_form();
    assert!(ext.d(&th).terms.is_zero());
    // θ∧θ vanishes, so d is a graded derivation with d² = 0
    assert!(ext.wedge(&th, &th).terms.is_zero());
    // (λ⊗1)∧(μ⊗b) = (λ∧μ)⊗b
    let b = dstar_group_element(&g, g.find_element("(123)").unwrap());
    let lam = ext.form_from_tensor(1, &ext.calc.label_form(1));
    let mu = ext.form_from_tensor(1, &ext.calc.label_form(5));
    let mu_b = ext.form_from_tensor(1, &ext.calc.right_multiply(&ext.calc.label_form(5), &b));
    let lm = ext.wedge(&lam, &mu);
    assert!(!lm.terms.is_zero());
    assert_eq!(ext.wedge(&lam, &mu_b).terms, ext.calc.right_multiply(&lm.terms, &b));
}

#[test]
fn leibniz_in_degree_one() {
    let ext = nine(-1, 3);
    let g = ext.calc.module.group.clone();
    let u = ext.scalar_form(&dstar_group_element(&g, g.find_element("(12)").unwrap()));
    let w = ext.form_from_tensor(1, &ext.calc.label_form(2));
    // d(a∧ω) = da∧ω + a∧dω
    let lhs = ext.d(&ext.wedge(&u, &w));
    let rhs = ext.wedge(&ext.d(&u), &w).terms.add(&ext.wedge(&u, &ext.d(&w)).terms);
    assert_eq!(lhs.terms, rhs);
}

#[test]
fn non_relation_is_rejected() {
    let ext = nine(1, 2);
    let t = vec![(ext.tensor(&[0, 4]), CycNum::one())];
    assert!(!ext.is_relation(&t));
    for r in ext.quadratic_relations() {
        assert!(ext.is_relation(r));
    }
}

#[test]
fn bound_gives_partial_results() {
    let g = FiniteGroup::builtin("S3").unwrap();
    let sec = Section::default_for(&g, &g.class_of(1));
    let rep = Representation::builtin(&g.centralizer(1).group, &Family::Trivial).unwrap();
    let calc = Calculus::build(&CrossedModule::new(&g, &sec, &rep).unwrap()).unwrap();
    let (ext, err) = ExteriorData::build_partial(calc, 3, 500);
    assert_eq!(ext.lambda_dims(), [1, 9, 48]);
    assert!(matches!(
        err,
        Some(ExteriorError::SizeBound {
            degree: 3,
            size: 729,
            bound: 500
        })
    ));
}

#[test]
fn one_dimensional_betti_baseline() {
    let ext = build("e", Family::SignSn, 4);
    assert_eq!(ext.lambda_dims(), [1, 1, 0, 0, 0]);
    assert_eq!(ext.cohomology().betti, [18, 18, 0, 0]);
}

#[test]
fn degree_four_baseline() {
    // beyond the published range; regression value only
    for q in [1, -1] {
        assert_eq!(nine(q, 4).lambda_dims(), [1, 9, 48, 198, 694]);
    }
}

#[test]
fn four_dimensional_blocks() {
    for (b, fam, dims) in [
        ("e", Family::Standard2S3, [1, 4, 6, 4]),
        ("(123)", Family::Trivial, [1, 4, 6, 4]),
        ("(123)", Family::Cyclic { n: 3, k: 1 }, [1, 4, 10, 24]),
    ] {
        let ext = build(b, fam, 3);
        assert_eq!(ext.lambda_dims(), dims);
        ext.check_dd_zero().unwrap();
        assert_eq!(braiding(&ext.calc), ext.braid);
    }
}

#[test]
fn forms_round_trip_through_lift() {
    let ext = nine(-1, 3);
    for n in 0..=3 {
        let d = ext.degree(n);
        for p in (0..d.dim()).step_by(7) {
            let f = Form {
                degree: n,
                terms: Terms::single(p, 3, CycNum::one()),
            };
            assert_eq!(ext.form_from_tensor(n, &ext.lift(&f)), f);
        }
    }
}
