use std::sync::Arc;

use proptest::prelude::*;
use quivrep_core::functors::{lift_path, morphism_f, morphism_g, orbit_canonical, translate};
use quivrep_core::quiver::{
    inversions, normal_form, normal_form_path, pathsum_mul, rewrite_at, rewrite_sites, ArrowId, Path, PathSum, QuiverSchema, VertexId,
    Window,
};
use quivrep_core::rational::q;
use quivrep_core::rep::{decompose, direct_sum_all, hom_dim, iso, EndAlgebra, IsoResult, RepMorphism, Representation};
use quivrep_core::workbench::random::{random_basis_change, random_path, random_rep};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn qmn() -> impl Strategy<Value = (i64, i64)> {
    prop::sample::select(vec![(2, 1), (3, 2), (1, -1), (5, 3), (1, 1)])
}

fn path_on(s: &QuiverSchema, tail: i64, families: &[u8]) -> Path {
    let mut at = VertexId::Int(tail);
    let mut arrows = Vec::new();
    for f in families {
        let a = ArrowId::new(*f, at);
        at = s.head(a).unwrap();
        arrows.push(a);
    }
    Path::new(s, VertexId::Int(tail), arrows).unwrap()
}

fn small_sum(s: &QuiverSchema, tail: i64, shapes: &[(Vec<u8>, i64)]) -> PathSum {
    PathSum::from_terms(s, shapes.iter().map(|(f, c)| (path_on(s, tail, f), q(*c)))).unwrap()
}

fn grid_rep(seed: u64) -> Arc<Representation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = QuiverSchema::QinfXinf;
    let w = Window::rect((0, 1), (0, 1)).vertices(&s).unwrap();
    Arc::new(random_rep(&s, &w, 2, 0.3, &mut rng).unwrap())
}

fn line_rep(seed: u64) -> Arc<Representation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = morphism_g(3, 2).unwrap();
    let w: Vec<VertexId> = (0..=5).map(VertexId::Int).collect();
    Arc::new(random_rep(g.source(), &w, 2, 0.3, &mut rng).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pathsum_product_is_associative(
        (m, n) in qmn(),
        a in prop::collection::vec((prop::collection::vec(1u8..=2, 0..3), -3i64..=3), 1..3),
        b in prop::collection::vec((prop::collection::vec(1u8..=2, 0..3), -3i64..=3), 1..3),
        c in prop::collection::vec((prop::collection::vec(1u8..=2, 0..3), -3i64..=3), 1..3),
    ) {
        let s = QuiverSchema::qmn(m, n).unwrap();
        // Terms all start at 0; products of non-composable terms simply vanish.
        let (a, b, c) = (small_sum(&s, 0, &a), small_sum(&s, 0, &b), small_sum(&s, 0, &c));
        let left = pathsum_mul(&pathsum_mul(&a, &b).unwrap(), &c).unwrap();
        let right = pathsum_mul(&a, &pathsum_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_form_is_confluent(
        (m, n) in qmn(),
        tail in -5i64..=5,
        families in prop::collection::vec(1u8..=2, 0..8),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..12),
    ) {
        let s = QuiverSchema::qmn(m, n).unwrap();
        let p = path_on(&s, tail, &families);
        let nf = normal_form_path(&s, &p).unwrap();
        prop_assert!(rewrite_sites(&nf).is_empty());
        prop_assert_eq!(nf.head(&s).unwrap(), p.head(&s).unwrap());
        // Rewrite at arbitrary sites; the normal form never changes.
        let mut cur = p.clone();
        for i in picks {
            let sites = rewrite_sites(&cur);
            if sites.is_empty() {
                break;
            }
            let next = rewrite_at(&s, &cur, sites[i.index(sites.len())]).unwrap();
            prop_assert_eq!(inversions(&next) + 1, inversions(&cur));
            cur = next;
            prop_assert_eq!(&normal_form_path(&s, &cur).unwrap(), &nf);
        }
        let sum = small_sum(&s, tail, &[(families.clone(), 2)]);
        prop_assert_eq!(normal_form(&sum).unwrap(), PathSum::from_terms(&s, [(nf, q(2))]).unwrap());
    }

    #[test]
    fn hom_dims_ignore_basis(seed in any::<u64>()) {
        let (v, u) = (line_rep(seed), line_rep(seed ^ 0x9e37));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (v2, h) = random_basis_change(&v, &mut rng).unwrap();
        let (u2, _) = random_basis_change(&u, &mut rng).unwrap();
        prop_assert!(h.is_iso() && h.intertwining_defect().unwrap().is_none());
        prop_assert_eq!(hom_dim(&v, &u).unwrap(), hom_dim(&v2, &u2).unwrap());
        prop_assert_eq!(EndAlgebra::new(&v).unwrap().dim(), EndAlgebra::new(&v2).unwrap().dim());
    }

    #[test]
    fn decomposition_reassembles(seed in any::<u64>()) {
        let v = line_rep(seed);
        let d = decompose(&v, seed).unwrap();
        prop_assert_eq!(d.summands.iter().map(|s| s.rep.total_dim()).sum::<usize>(), v.total_dim());
        for s in &d.summands {
            let id = RepMorphism::identity(s.rep.clone());
            prop_assert_eq!(s.projection.after(&s.inclusion).unwrap().flatten(), id.flatten());
        }
        let sum = Arc::new(direct_sum_all(v.schema(), d.summands.iter().map(|s| &*s.rep)).unwrap());
        prop_assert!(matches!(iso(&sum, &v, seed).unwrap(), IsoResult::Iso(_)));
    }

    #[test]
    fn radical_is_nilpotent(seed in any::<u64>()) {
        let v = line_rep(seed);
        let end = EndAlgebra::new(&v).unwrap();
        for x in end.radical_basis().unwrap() {
            prop_assert!(x.pow(v.total_dim().max(1)).unwrap().is_zero());
        }
        prop_assert_eq!(end.radical_dim() + end.semisimple_dim(), end.dim());
    }

    #[test]
    fn lifted_paths_round_trip(
        (m, n) in qmn().prop_filter("covering", |(m, n)| m + n != 0),
        x in -10i64..=10,
        len in 0usize..6,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = morphism_g(m, n).unwrap();
        let p = random_path(g.source(), VertexId::Int(x), len, &mut rng).unwrap();
        let image = g.map_path(&p).unwrap();
        prop_assert_eq!(image.len(), len);
        prop_assert_eq!(lift_path(&g, &image, p.head(g.source()).unwrap()).unwrap(), p.clone());
        let f = morphism_f();
        let p = random_path(f.source(), VertexId::Pair(x, -x), len, &mut rng).unwrap();
        prop_assert_eq!(lift_path(&f, &f.map_path(&p).unwrap(), p.head(f.source()).unwrap()).unwrap(), p);
    }

    #[test]
    fn orbit_canonical_is_translation_invariant(seed in any::<u64>(), z in -3i64..=3) {
        let v = grid_rep(seed);
        prop_assume!(!v.is_zero());
        let moved = translate(&v, z).unwrap();
        prop_assert_eq!(orbit_canonical(&moved).unwrap(), orbit_canonical(&v).unwrap());
        prop_assert_eq!(translate(&moved, -z).unwrap(), (*v).clone());
    }
}
