use num_bigint::BigInt;
use proptest::prelude::*;

use qdc_core::cyclo::{CycMatrix, CycNum, Rational};
use qdc_core::group::{FiniteGroup, Perm, Section, DEFAULT_CLOSURE_BOUND};

const CONDUCTORS: [u32; 6] = [1, 2, 3, 4, 6, 12];

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn cyc() -> impl Strategy<Value = CycNum> {
    (
        prop::sample::select(CONDUCTORS.to_vec()),
        prop::collection::vec((-6i64..=6, 1i64..=4), 12),
    )
        .prop_map(|(n, cs)| {
            let coeffs: Vec<Rational> = cs.into_iter().take(n as usize).map(|(p, q)| rat(p, q)).collect();
            CycNum::from_coeffs(n, &coeffs).unwrap()
        })
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn to_cyc(m: &[Vec<i64>]) -> CycMatrix {
    CycMatrix::from_rows(
        m.iter()
            .map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect())
            .collect(),
    )
}

proptest! {
    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&CycNum::one()), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_is_a_ring_map(a in cyc(), b in cyc(), k in prop::sample::select(vec![1i64, 5, 7, 11])) {
        prop_assert_eq!(a.mul(&b).galois(k), a.galois(k).mul(&b.galois(k)));
        prop_assert_eq!(a.add(&b).galois(k), a.galois(k).add(&b.galois(k)));
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn literals_round_trip(a in cyc()) {
        let back = CycNum::parse(&a.to_literal(), a.conductor().max(1)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn embedding_respects_arithmetic(a in cyc(), b in cyc()) {
        // every element lives in Q(ζ₁₂); its coordinates there are additive
        let (ea, eb) = (a.embed(12).unwrap(), b.embed(12).unwrap());
        let sum: Vec<Rational> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(a.add(&b).embed(12).unwrap(), sum);
    }

    #[test]
    fn rank_invariances(m in int_matrix(6, 8), i in 0usize..6, j in 0usize..6, s in 1i64..5) {
        let a = to_cyc(&m);
        let r = a.rank();
        prop_assert_eq!(a.transpose().rank(), r);
        let mut swapped = m.clone();
        swapped.swap(i, j);
        prop_assert_eq!(to_cyc(&swapped).rank(), r);
        let mut sheared = m.clone();
        if i != j {
            let row: Vec<i64> = m[j].iter().map(|x| x * s).collect();
            for (x, y) in sheared[i].iter_mut().zip(row) {
                *x += y;
            }
        }
        prop_assert_eq!(to_cyc(&sheared).rank(), r);
        let k = a.kernel();
        prop_assert_eq!(k.cols(), 8 - r);
        prop_assert!(a.matmul(&k).is_zero());
    }

    #[test]
    fn random_rank_r(r in 0usize..=10, b in int_matrix(10, 10), c in int_matrix(10, 10)) {
        // [I; B'] · [I | C'] has rank exactly r
        let left: Vec<Vec<i64>> = (0..10)
            .map(|i| (0..r).map(|k| if i < r { (i == k) as i64 } else { b[i][k] }).collect())
            .collect();
        let right: Vec<Vec<i64>> = (0..r)
            .map(|k| (0..10).map(|j| if j < r { (j == k) as i64 } else { c[k][j] }).collect())
            .collect();
        let prod: Vec<Vec<i64>> = (0..10)
            .map(|i| (0..10).map(|j| (0..r).map(|k| left[i][k] * right[k][j]).sum()).collect())
            .collect();
        prop_assert_eq!(to_cyc(&prod).rank(), r);
    }
}

fn small_groups() -> Vec<FiniteGroup> {
    let mut gs: Vec<FiniteGroup> = ["Z2", "Z3", "Z4", "S3", "D4"]
        .iter()
        .map(|n| FiniteGroup::builtin(n).unwrap())
        .collect();
    let s4 = [
        Perm::from_cycles(4, &[vec![1, 2]]).unwrap(),
        Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap(),
    ];
    gs.push(FiniteGroup::from_generators(4, &s4, DEFAULT_CLOSURE_BOUND).unwrap());
    gs
}

#[test]
fn cocycle_identity_exhaustive() {
    for g in small_groups() {
        assert!(g.order() <= 24);
        for class in g.conjugacy_classes() {
            let sec = Section::default_for(&g, &class);
            for &a in &class.elements {
                for u in g.elements() {
                    for v in g.elements() {
                        // ζ_a(uv) = ζ_{vav⁻¹}(u) ζ_a(v)
                        let lhs = sec.cocycle(&g, a, g.mul(u, v));
                        let rhs = g.mul(sec.cocycle(&g, g.conj(v, a), u), sec.cocycle(&g, a, v));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn s4_classes() {
    let g = small_groups().pop().unwrap();
    let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
    sizes.sort();
    assert_eq!(sizes, [1, 3, 6, 6, 8]);
}
