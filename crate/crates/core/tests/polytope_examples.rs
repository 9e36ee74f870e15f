use cbp_core::families::{path, spider, star};
use cbp_core::num::ratio;
use cbp_core::*;

fn setup(g: &Graph) -> (BlockDecomposition, RationalPolyhedron) {
    let d = block_decomposition(g).unwrap();
    let h = h_representation(&d).unwrap();
    (d, h)
}

fn has_row(h: &RationalPolyhedron, alpha: &[i64]) -> bool {
    let row = Inequality::from_i64(alpha, 1);
    h.inequalities.iter().any(|r| same_hyperplane(r, &row))
}

fn point(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(p, q)| ratio(p, q)).collect()
}

#[test]
fn three_block_path_row() {
    let (_, h) = setup(&path(3));
    assert!(has_row(&h, &[1, -1, 1]));
    assert_eq!(h.len(), 7);
}

#[test]
fn five_block_path_half_point() {
    let (d, h) = setup(&path(5));
    assert!(has_row(&h, &[1, -1, 1, -1, 1]));
    let x = point(&[(1, 2), (0, 1), (1, 2), (0, 1), (1, 2)]);
    assert!(!contains_point(&h, &x).unwrap());
    // the box and three-term rows alone keep the point
    let weak: Vec<Inequality> = h
        .inequalities
        .iter()
        .filter(|r| r.coeffs.iter().filter(|c| **c != ratio(0, 1)).count() <= 3)
        .cloned()
        .collect();
    let weak = RationalPolyhedron::new(d.block_count(), weak).unwrap();
    assert!(contains_point(&weak, &x).unwrap());
}

#[test]
fn three_independent_blocks_around_one() {
    // a triangle with a pendant edge at each corner
    let (d, h) = setup(&spider(3));
    let hub = (0..4).find(|&b| d.blocks()[b].vertices.len() == 3).unwrap();
    let mut alpha = vec![1; 4];
    alpha[hub] = -2;
    assert!(has_row(&h, &alpha));
    let mut half = vec![(1, 2); 4];
    half[hub] = (0, 1);
    assert!(!contains_point(&h, &point(&half)).unwrap());
}

#[test]
fn neighbors_of_first_block_in_path() {
    let d = block_decomposition(&path(3)).unwrap();
    let pg = polytope_graph(&d).unwrap();
    let i = pg.vertices.iter().position(|v| *v == BlockSubset::from(vec![0])).unwrap();
    let mut nbrs: Vec<String> = pg.neighbors(i).into_iter().map(|j| pg.vertices[j].to_string()).collect();
    nbrs.sort();
    assert_eq!(nbrs, ["{0,1,2}", "{0,1}", "{2}", "{}"]);
    assert!(!simplicity_report(&d, &pg, &h_representation(&d).unwrap()).is_simple);
}

#[test]
fn one_cut_vertex_gives_the_cube() {
    let (d, h) = setup(&star(4));
    assert_eq!(enumerate_vertices(&d).unwrap().len(), 16);
    assert_eq!(h.len(), 8);
    let pg = polytope_graph(&d).unwrap();
    assert!(simplicity_report(&d, &pg, &h).is_simple);
    assert_eq!(diameter(&pg), 4);
}

#[test]
fn narayana_numbers_and_block_paths() {
    use cbp_core::ehrhart::narayana_numbers;
    let n4: Vec<String> = narayana_numbers(4).iter().map(|x| x.to_string()).collect();
    assert_eq!(n4, ["1", "6", "6", "1"]);
    for n in 2..=5usize {
        let (d, h) = setup(&path(n));
        let p = hstar_profile(&d, &h).unwrap();
        let nara: Vec<i64> = narayana_numbers(n as u64).iter().map(|x| x.to_string().parse().unwrap()).collect();
        assert_eq!(&p.hstar[..n], &nara[..]);
        assert_eq!(p.flags.narayana_match, Some(n as u64));
    }
}

#[test]
fn path_three_hstar_from_counts() {
    let (d, h) = setup(&path(3));
    let p = hstar_profile(&d, &h).unwrap();
    assert_eq!(p.evaluations, vec![1, 7, 23, 54]);
    assert_eq!(p.hstar, vec![1, 3, 1, 0]);
}
