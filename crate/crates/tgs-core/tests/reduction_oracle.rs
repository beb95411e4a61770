//! Full-state negativity as the oracle for the boundary reduction: on every
//! graph small enough to diagonalize whole, the reduced computation must
//! reproduce the full one.

use tgs_core::entanglement::{negativity, reduced_negativity};
use tgs_core::graph::{boundary_reduce, Bipartition, BoundaryReduction, Graph};
use tgs_core::states::thermal_state;

const TEMPERATURES: [f64; 4] = [0.3, 0.9, 1.3, 2.0];
const ORACLE_TOL: f64 = 1e-9;

fn assert_reduction_matches_full(g: &Graph, p: &Bipartition) {
    for &t in &TEMPERATURES {
        let full = negativity(&thermal_state(g, t).unwrap(), p).unwrap();
        let reduced = reduced_negativity(g, p, t).unwrap();
        assert!(
            (full - reduced).abs() < ORACLE_TOL,
            "n={} partition={} T={t}: full={full} reduced={reduced}",
            g.n(),
            p.descriptor()
        );
    }
}

#[test]
fn chains_all_cuts_and_sites() {
    for n in [4usize, 6, 8] {
        let g = Graph::linear_chain(n, 1.0).unwrap();
        for i in 0..n - 1 {
            assert_reduction_matches_full(&g, &Bipartition::contiguous_cut(n, i).unwrap());
        }
        for i in 0..n {
            assert_reduction_matches_full(&g, &Bipartition::single_site(n, i).unwrap());
        }
    }
}

#[test]
fn chain_with_nonuniform_couplings() {
    let g = Graph::linear_chain(6, vec![0.5, 1.8, 1.0, 2.4, 0.7, 1.2]).unwrap();
    for i in 0..5 {
        assert_reduction_matches_full(&g, &Bipartition::contiguous_cut(6, i).unwrap());
    }
    for i in 0..6 {
        assert_reduction_matches_full(&g, &Bipartition::single_site(6, i).unwrap());
    }
}

#[test]
fn lattice_vertical_cut_and_interior_sites() {
    // 2x4 lattice, vertical cut between columns 1 and 2
    let g = Graph::square_lattice(2, 4, 1.0).unwrap();
    let vertical = Bipartition::new([0, 1, 4, 5], 8).unwrap();
    assert_reduction_matches_full(&g, &vertical);
    for site in [1usize, 5] {
        assert_reduction_matches_full(&g, &Bipartition::single_site(8, site).unwrap());
    }

    let g = Graph::square_lattice(2, 3, 1.0).unwrap();
    let vertical = Bipartition::new([0, 3], 6).unwrap();
    assert_reduction_matches_full(&g, &vertical);
    assert_reduction_matches_full(&g, &Bipartition::single_site(6, 1).unwrap());
}

#[test]
fn random_trees() {
    let mut state = 0x5eed_cafe_u64 | 1;
    let mut next_usize = move |bound: usize| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize % bound
    };
    for trial in 0..5 {
        let n = 5 + trial % 3;
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (next_usize(v), v)).collect();
        let couplings: Vec<f64> = (0..n).map(|_| 0.2 + next_usize(1000) as f64 / 400.0).collect();
        let g = Graph::new(n, edges, couplings).unwrap();

        assert_reduction_matches_full(&g, &Bipartition::single_site(n, next_usize(n)).unwrap());
        assert_reduction_matches_full(&g, &Bipartition::contiguous_cut(n, next_usize(n - 1)).unwrap());
    }
}

#[test]
fn reduction_structure_invariants_on_random_graphs() {
    let mut state = 0xabcdef12345u64;
    let mut next_usize = move |bound: usize| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize % bound
    };
    for _ in 0..50 {
        let n = 4 + next_usize(20);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if next_usize(4) == 0 {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::new(n, edges, 1.0).unwrap();
        let cut = next_usize(n - 1);
        let p = Bipartition::contiguous_cut(n, cut).unwrap();
        match boundary_reduce(&g, &p).unwrap() {
            BoundaryReduction::Disconnected => {}
            BoundaryReduction::Reduced(rp) => {
                // never grows, and bounded by twice the crossing edge count
                assert!(rp.reduced_graph.n() <= g.n());
                assert!(rp.reduced_graph.n() <= 2 * rp.reduced_graph.edges().len());
                // every reduced edge crosses the reduced partition
                for &(a, b) in rp.reduced_graph.edges() {
                    assert_ne!(
                        rp.reduced_partition.contains(a),
                        rp.reduced_partition.contains(b)
                    );
                }
                // reducing again changes nothing
                let BoundaryReduction::Reduced(rp2) =
                    boundary_reduce(&rp.reduced_graph, &rp.reduced_partition).unwrap()
                else {
                    panic!("reduced problem lost its crossing edges");
                };
                assert_eq!(rp2.reduced_graph, rp.reduced_graph);
                assert_eq!(rp2.reduced_partition, rp.reduced_partition);
            }
        }
    }
}
