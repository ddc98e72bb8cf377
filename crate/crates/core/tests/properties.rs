use std::sync::OnceLock;

use proptest::prelude::*;

use flagkneser_core::certificate::{Certificate, Violation};
use flagkneser_core::constructions::{gq_elements, pencil_gq_set, pencil_pg_set, pg_elements};
use flagkneser_core::galois::{Fe, FieldTable};
use flagkneser_core::graph::Graph;
use flagkneser_core::klein::Klein;
use flagkneser_core::projective::{ChamberComplex, Geometry};
use flagkneser_core::quadrangle::{q4_quadric, w_symplectic, Flag, FlagComplex};

const ORDERS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn fields() -> &'static [FieldTable] {
    static F: OnceLock<Vec<FieldTable>> = OnceLock::new();
    F.get_or_init(|| ORDERS.iter().map(|&q| FieldTable::new(q).unwrap()).collect())
}

fn pg3() -> &'static (ChamberComplex, Klein) {
    static PG: OnceLock<(ChamberComplex, Klein)> = OnceLock::new();
    PG.get_or_init(|| {
        let cc = ChamberComplex::new(Geometry::new(3, 3).unwrap(), false).unwrap();
        let klein = Klein::new(&cc.geometry).unwrap();
        (cc, klein)
    })
}

fn q43() -> &'static FlagComplex {
    static FC: OnceLock<FlagComplex> = OnceLock::new();
    FC.get_or_init(|| FlagComplex::new(q4_quadric(3).unwrap().gq).unwrap())
}

fn swap(f: Flag) -> Flag {
    Flag { point: f.line, line: f.point }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms_and_frobenius(k in 0..ORDERS.len(), a in 0u8..16, b in 0u8..16, c in 0u8..16) {
        let f = &fields()[k];
        let q = f.order() as u8;
        let (a, b, c) = (Fe(a % q), Fe(b % q), Fe(c % q));
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe(1));
        }
        let p = f.characteristic();
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn lines_meet_iff_images_are_collinear(a in 0usize..130, b in 0usize..130) {
        let (cc, klein) = pg3();
        let (pa, pb) = (klein.pluecker(a), klein.pluecker(b));
        prop_assert!(klein.quadric().contains(pa));
        prop_assert_eq!(pa == pb, a == b);
        if a != b {
            prop_assert_eq!(cc.geometry.lines_meet(a, b), klein.collinear(pa, pb));
        }
    }

    #[test]
    fn chamber_opposition_symmetry_duality_and_transfer(i in 0usize..2080, j in 0usize..2080) {
        let (cc, klein) = pg3();
        let g = &cc.geometry;
        let (a, b) = (&cc.chambers[i], &cc.chambers[j]);
        let opp = g.opposite(a, b);
        prop_assert_eq!(opp, g.opposite(b, a));
        prop_assert_eq!(opp, cc.graph.adjacent(i, j));
        prop_assert_eq!(opp, g.opposite(&g.dual_chamber(a), &g.dual_chamber(b)));
        prop_assert_eq!(opp, klein.opposite(&klein.translate_chamber(a), &klein.translate_chamber(b)));
        if i == j {
            prop_assert!(!opp);
        }
    }

    #[test]
    fn flag_opposition_symmetry_and_duality(i in 0usize..160, j in 0usize..160) {
        let fc = q43();
        let dual = fc.gq.dual();
        let (a, b) = (fc.flags[i], fc.flags[j]);
        let opp = fc.gq.flags_opposite(&a, &b);
        prop_assert_eq!(opp, fc.gq.flags_opposite(&b, &a));
        prop_assert_eq!(opp, fc.graph.adjacent(i, j));
        prop_assert_eq!(opp, dual.flags_opposite(&swap(a), &swap(b)));
        if i == j {
            prop_assert!(!opp);
        }
    }

    #[test]
    fn independent_set_certificates_match_direct_check(
        n in 1usize..16,
        edges in proptest::collection::vec(any::<bool>(), 120),
        members in proptest::collection::vec(any::<bool>(), 16),
    ) {
        let mut bits = edges.into_iter();
        let g = Graph::from_fn(n, |_, _| bits.next().unwrap());
        let set: Vec<usize> = (0..n).filter(|&v| members[v]).collect();
        let independent = set.iter().all(|&a| set.iter().all(|&b| !g.adjacent(a, b)));
        let c = Certificate::independent_set("random", &g, set);
        prop_assert_eq!(c.verify(&g).is_ok(), independent);
        prop_assert_eq!(c.verify(&g), c.verify(&g));
        let other = Graph::from_fn(n + 1, |_, _| false);
        prop_assert_eq!(c.verify(&other), Err(Violation::FingerprintMismatch));
    }
}

#[test]
fn pencil_sizes_follow_closed_forms() {
    for q in [2usize, 3] {
        let cc = ChamberComplex::new(Geometry::new(3, q as u32).unwrap(), false).unwrap();
        let size = (q * q + q + 1) * (q + 1) * (q + 1);
        let elements = pg_elements(&cc);
        assert_eq!(elements.len(), 2 * (q * q + 1) * (q + 1));
        assert!(elements.into_iter().all(|x| pencil_pg_set(&cc, x).len() == size));
    }
    for model in [w_symplectic(2).unwrap(), w_symplectic(3).unwrap(), q4_quadric(3).unwrap()] {
        let fc = FlagComplex::new(model.gq).unwrap();
        let (s, t) = fc.gq.order();
        assert_eq!(fc.gq.n_points(), (s + 1) * (s * t + 1));
        assert_eq!(fc.gq.n_lines(), (t + 1) * (s * t + 1));
        assert_eq!(fc.flags.len(), (s + 1) * (t + 1) * (s * t + 1));
        assert!(gq_elements(&fc).into_iter().all(|x| pencil_gq_set(&fc, x).len() == (s + 1) * (t + 1)));
    }
}
