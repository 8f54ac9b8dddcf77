use proptest::prelude::*;

use solidarity_cover::greedy::{
    greedy_sc, min_radius_greedy, min_radius_greedy_threaded, GreedyOutcome,
};
use solidarity_cover::io::document::{
    parse_instance, parse_partition, write_instance, write_partition, Document, InstanceFile,
    PartitionFile,
};
use solidarity_cover::io::generate::{gen_connected_graph, gen_planar_orthogonal};
use solidarity_cover::reductions::graph_to_hop_metric;
use solidarity_cover::squares::{min_radius_bicriteria, min_radius_bicriteria_threaded};
use solidarity_cover::verify::{cover_radius, is_solidarity_cover};
use solidarity_cover::{Instance, Partition, Radius};

fn points(max_n: usize) -> impl Strategy<Value = Instance> {
    prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64), 1..=max_n)
        .prop_map(|xy| Instance::from_xy(&xy).unwrap())
}

/// Planar points on a coarse lattice, so ties and coincident points occur.
fn lattice_points(max_n: usize) -> impl Strategy<Value = Instance> {
    prop::collection::vec((0..4i32, 0..4i32), 1..=max_n).prop_map(|xy| {
        let xy: Vec<(f64, f64)> = xy
            .into_iter()
            .map(|(x, y)| (f64::from(x), f64::from(y)))
            .collect();
        Instance::from_xy(&xy).unwrap()
    })
}

fn hop_metric() -> impl Strategy<Value = Instance> {
    (1..=8usize, 0.2..0.9f64, any::<u64>()).prop_map(|(n, p, seed)| {
        graph_to_hop_metric(&gen_connected_graph(n, p, seed).unwrap()).unwrap()
    })
}

fn any_instance() -> impl Strategy<Value = Instance> {
    prop_oneof![points(9), lattice_points(9), hop_metric()]
}

fn instance_with_partition() -> impl Strategy<Value = (Instance, Partition)> {
    (any_instance(), 1..=3usize).prop_flat_map(|(inst, m)| {
        let n = inst.len();
        let m = m.min(n);
        prop::collection::vec(0..m, n).prop_map(move |labels| {
            let p = Partition::new(m, labels.into_iter().map(Some).collect()).unwrap();
            (inst.clone(), p)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn balls_grow_with_radius(inst in any_instance(), a in 0usize..64, b in 0usize..64) {
        let radii = inst.candidate_radii();
        let (a, b) = (a % radii.len(), b % radii.len());
        let (lo, hi) = (radii[a.min(b)], radii[a.max(b)]);
        for i in 0..inst.len() {
            let small = inst.ball(i, lo).unwrap();
            let large = inst.ball(i, hi).unwrap();
            prop_assert!(small.contains(&i));
            prop_assert!(small.iter().all(|p| large.contains(p)));
        }
    }

    #[test]
    fn cover_radius_is_the_least_valid_candidate((inst, p) in instance_with_partition()) {
        match cover_radius(&inst, &p) {
            Ok(r) => {
                prop_assert!(is_solidarity_cover(&inst, &p, r));
                for &c in inst.candidate_radii().iter().filter(|c| c.value() < r.value()) {
                    prop_assert!(!is_solidarity_cover(&inst, &p, c));
                }
            }
            Err(_) => prop_assert!(p.subsets().iter().any(Vec::is_empty)),
        }
    }

    #[test]
    fn greedy_centres_are_separated_and_balls_disjoint(inst in any_instance(), m in 1..=3usize, k in 0usize..64) {
        let m = m.min(inst.len());
        let radii = inst.candidate_radii();
        let r = radii[k % radii.len()];
        let outcome = greedy_sc(&inst, m, r).unwrap();
        let trace = outcome.trace();
        let centres = &trace.centers;
        for (i, &a) in centres.iter().enumerate() {
            for &b in &centres[i + 1..] {
                prop_assert!(inst.dist(a, b) > 2.0 * r.value());
                let ball_a = inst.ball(a, r).unwrap();
                let ball_b = inst.ball(b, r).unwrap();
                prop_assert!(ball_a.iter().all(|q| !ball_b.contains(q)));
            }
        }
        if let GreedyOutcome::Cover { partition, .. } = &outcome {
            prop_assert!(partition.is_exhaustive());
            prop_assert!(is_solidarity_cover(&inst, partition, r.scaled(3.0).unwrap()));
        }
    }

    #[test]
    fn threaded_scans_match_sequential(inst in any_instance(), m in 1..=3usize, threads in 2..=4usize) {
        let m = m.min(inst.len());
        prop_assert_eq!(min_radius_greedy(&inst, m).unwrap().radius, min_radius_greedy_threaded(&inst, m, threads).unwrap().radius);
        if inst.as_points().is_some() && inst.len() >= 4 {
            // square bound 4, so m = 4 leaves one subset
            let beta = 1.0 + 4.0 * std::f64::consts::SQRT_2;
            let one = min_radius_bicriteria(&inst, 4, beta).unwrap();
            let many = min_radius_bicriteria_threaded(&inst, 4, beta, threads).unwrap();
            prop_assert_eq!(one.radius, many.radius);
            prop_assert_eq!(one.partition, many.partition);
        }
    }

    #[test]
    fn instance_documents_round_trip(inst in any_instance()) {
        let text = write_instance(&InstanceFile::from(inst));
        let again = write_instance(&parse_instance(&text).unwrap());
        prop_assert_eq!(text, again);
    }

    #[test]
    fn planar_documents_round_trip(seed in any::<u64>(), vertices in 1..=8usize) {
        let g = gen_planar_orthogonal(5, 4, vertices, 12, seed).unwrap();
        let text = write_instance(&InstanceFile::new(Document::Planar(g.clone())));
        let parsed = parse_instance(&text).unwrap();
        prop_assert_eq!(&parsed.document, &Document::Planar(g));
        prop_assert_eq!(write_instance(&parsed), text);
    }

    #[test]
    fn partition_documents_round_trip((inst, p) in instance_with_partition(), r in prop::option::of(0.0..10.0f64)) {
        let file = PartitionFile::new(&p, r);
        let text = write_partition(&file);
        let back = parse_partition(&text).unwrap();
        prop_assert_eq!(write_partition(&back), text);
        prop_assert_eq!(back.partition_for(&inst).unwrap(), p);
    }
}

#[test]
fn radius_type_rejects_bad_values() {
    assert!(Radius::new(-1.0).is_err());
    assert!(Radius::new(f64::NAN).is_err());
    assert_eq!(Radius::new(-0.0).unwrap(), Radius::ZERO);
}
