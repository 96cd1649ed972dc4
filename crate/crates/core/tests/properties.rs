use proptest::prelude::*;

use knotgauss::codes::{build_diagram, parse_gauss_code, parse_pd_code, realize, realize_exhaustive, to_pd_code, ChordMatching, KnotDiagram, Sign};
use knotgauss::constructions::whitehead_double;
use knotgauss::enumerate::enumerate_shadows;
use knotgauss::gauss::GaussDiagram;
use knotgauss::invariants::{lk, v2, v2_symmetrized, v3};
use knotgauss::oracles::{conway, jones, signature_and_det};
use knotgauss::planar::{connected_sum, genus, is_reduced, reduce};

fn diagram() -> impl Strategy<Value = KnotDiagram> {
    (1usize..=7, any::<u32>(), any::<u32>()).prop_map(|(c, i, bits)| {
        let shadows = enumerate_shadows(c).unwrap();
        let s = &shadows[i as usize % shadows.len()];
        let neg: Vec<bool> = (0..c).map(|k| bits >> k & 1 == 1).collect();
        s.with_signs(&neg)
    })
}

fn matching(max_chords: usize) -> impl Strategy<Value = ChordMatching> {
    (1..=max_chords).prop_flat_map(|c| Just((0..2 * c).collect::<Vec<usize>>()).prop_shuffle()).prop_map(|perm| {
        let pairs: Vec<(usize, usize)> = perm.chunks(2).map(|p| (p[0], p[1])).collect();
        ChordMatching::from_pairs(&pairs).unwrap()
    })
}

fn inv(d: &KnotDiagram) -> (i64, i64) {
    let g = GaussDiagram::from_diagram(d);
    (v2(&g, None), v3(&g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mirror_and_reversal(d in diagram()) {
        let (a2, a3) = inv(&d);
        prop_assert_eq!(inv(&d.mirror()), (a2, -a3));
        prop_assert_eq!(inv(&d.reverse()), (a2, a3));
        let g = GaussDiagram::from_diagram(&d);
        prop_assert_eq!(lk(&g), lk(&GaussDiagram::from_diagram(&d.mirror())));
    }

    #[test]
    fn basepoints(d in diagram()) {
        let g = GaussDiagram::from_diagram(&d);
        let w = v2(&g, None);
        for b in 0..g.points() {
            prop_assert_eq!(v2(&g, Some(b)), w);
            prop_assert_eq!(v2_symmetrized(&g, Some(b)), w);
        }
    }

    #[test]
    fn code_roundtrips(d in diagram()) {
        let text = d.code().to_string();
        let back = build_diagram(&parse_gauss_code(&text).unwrap()).unwrap();
        prop_assert_eq!(back.code(), d.code());
        let pd = parse_pd_code(&to_pd_code(&d)).unwrap();
        prop_assert_eq!(pd.code().symmetric_canonical(), d.code().symmetric_canonical());
        prop_assert_eq!(inv(&pd), inv(&d));
    }

    #[test]
    fn reduction_keeps_the_knot(d in diagram()) {
        let r = reduce(&d);
        prop_assert!(is_reduced(&r));
        prop_assert_eq!(reduce(&r).code(), r.code());
        prop_assert_eq!(inv(&r), inv(&d));
        prop_assert_eq!(jones(&r).unwrap(), jones(&d).unwrap());
    }

    #[test]
    fn genus_and_determinant(d in diagram()) {
        let g = genus(&d);
        prop_assert_eq!(g.c + 1, g.s + 2 * g.g);
        let sd = signature_and_det(&d).unwrap();
        prop_assert_eq!(sd.sigma_paper % 2, 0);
        prop_assert!(sd.sigma_paper.abs() <= 2 * g.g as i64);
        let sign = if sd.sigma_standard() % 4 == 0 { 1 } else { -1 };
        prop_assert_eq!(sd.det_signed.signum(), sign);
        prop_assert_eq!(conway(&d).unwrap().det_signed(), sd.det_signed);
    }

    #[test]
    fn sums_add(a in diagram(), b in diagram()) {
        let s = connected_sum(&a, &b);
        let (a2, a3) = inv(&a);
        let (b2, b3) = inv(&b);
        prop_assert_eq!(inv(&s), (a2 + b2, a3 + b3));
        prop_assert_eq!(genus(&s).g, genus(&a).g + genus(&b).g);
        let gs = GaussDiagram::from_diagram(&s);
        prop_assert_eq!(lk(&gs), lk(&GaussDiagram::from_diagram(&a)) + lk(&GaussDiagram::from_diagram(&b)));
    }

    #[test]
    fn realization_agrees_with_search(m in matching(6)) {
        let fast = realize(&m);
        let slow = realize_exhaustive(&m);
        prop_assert_eq!(fast.is_some(), !slow.is_empty());
        if let Some(e) = fast {
            prop_assert!(slow.contains(&e));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn doubles(c in 1usize..=4, i in any::<u32>(), bits in any::<u32>(), positive in any::<bool>()) {
        let shadows = enumerate_shadows(c).unwrap();
        let s = &shadows[i as usize % shadows.len()];
        let neg: Vec<bool> = (0..c).map(|k| bits >> k & 1 == 1).collect();
        let k = s.with_signs(&neg);
        let sign = if positive { Sign::Positive } else { Sign::Negative };
        let d = whitehead_double(&k, sign).unwrap();
        let w = k.writhe().unsigned_abs() as usize;
        prop_assert_eq!(d.crossing_count(), 4 * c + 2 * w + 2);
        prop_assert_eq!(inv(&d).1, -8 * sign.value() * inv(&k).0);
        prop_assert_eq!(inv(&d).0, 0);
    }
}
