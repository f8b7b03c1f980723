use mock_theta::partitions::{enumerate, rank_counts, rank_gf, specialize, Partition, MAX_N};
use mock_theta::Cyc;

#[test]
fn partition_numbers() {
    let p: Vec<usize> = (0..=12).map(|n| enumerate(n).unwrap().len()).collect();
    assert_eq!(p, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
}

#[test]
fn ranks_of_five() {
    let c = rank_counts(5).unwrap();
    let want = [(-4, 1), (-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1), (4, 1)];
    assert_eq!(c.into_iter().collect::<Vec<_>>(), want);
    assert_eq!(Partition::new(vec![3, 1, 1]).rank(), 0);
}

#[test]
fn generating_function_at_one_counts_partitions() {
    let gf = rank_gf(MAX_N).unwrap();
    let s = specialize(&gf, &Cyc::one()).unwrap();
    assert_eq!(s.coeff(40), Cyc::from_int(37338));
    assert!(rank_gf(MAX_N + 1).is_err());
}
