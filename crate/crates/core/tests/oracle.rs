//! Library results against brute-force oracles written independently here.

use std::collections::BTreeSet;

use rado_core::coloring::excellence_equations;
use rado_core::{
    find_good_coloring, is_excellent_coloring, is_good_coloring, rado_number, Coloring, Equation, RegularityStatus,
    SearchOptions,
};

/// Every tuple in `[1, n]^k` solving `sum c_i x_i = x_k + shift`.
fn brute_solutions(coeffs: &[i64], shift: i64, n: i64) -> BTreeSet<Vec<i64>> {
    let k = coeffs.len() + 1;
    let mut out = BTreeSet::new();
    let mut xs = vec![1i64; k];
    loop {
        let lhs: i64 = coeffs.iter().zip(&xs).map(|(c, x)| c * x).sum();
        if lhs == xs[k - 1] + shift {
            out.insert(xs.clone());
        }
        let mut i = 0;
        while i < k && xs[i] == n {
            xs[i] = 1;
            i += 1;
        }
        if i == k {
            return out;
        }
        xs[i] += 1;
    }
}

fn brute_good(coeffs: &[i64], shift: i64, colors: &[u8]) -> bool {
    let n = colors.len() as i64;
    if n == 0 {
        return true;
    }
    brute_solutions(coeffs, shift, n).iter().all(|sol| {
        let c = colors[sol[0] as usize - 1];
        sol.iter().any(|&x| colors[x as usize - 1] != c)
    })
}

/// All `t^n` colorings of `[1, n]`, as 1-based color vectors.
fn all_colorings(t: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=t).map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}

/// Least `n <= cap` with no good `t`-coloring of `[1, n]`, by full enumeration.
fn brute_rado(coeffs: &[i64], shift: i64, t: u8, cap: usize) -> Option<usize> {
    (1..=cap).find(|&n| !all_colorings(t, n).iter().any(|col| brute_good(coeffs, shift, col)))
}

fn coefficient_lists(max_len: usize, max_c: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (1..=max_c).map(move |c| {
                    let mut next = p.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn solutions_by_max_partition_brute_force() {
    for coeffs in coefficient_lists(3, 3) {
        for shift in -4..=4 {
            let eq = Equation::new(coeffs.clone(), shift).unwrap();
            let n = if coeffs.len() == 3 { 6 } else { 8 };
            let mut union = BTreeSet::new();
            for p in 1..=n {
                for sol in eq.solutions_with_max(p) {
                    let v = sol.values().to_vec();
                    assert_eq!(*v.iter().max().unwrap(), p, "{eq}: {v:?}");
                    assert!(eq.is_solution(&sol).unwrap());
                    assert!(union.insert(v), "{eq}: duplicate tuple");
                }
            }
            assert_eq!(union, brute_solutions(&coeffs, shift, n), "{eq} n={n}");
        }
    }
}

#[test]
fn goodness_matches_brute_force() {
    for coeffs in coefficient_lists(2, 3) {
        for shift in -3..=3 {
            let eq = Equation::new(coeffs.clone(), shift).unwrap();
            for n in 0..=6 {
                for colors in all_colorings(2, n) {
                    let col = Coloring::new(2, colors.clone()).unwrap();
                    assert_eq!(
                        is_good_coloring(&eq, &col),
                        brute_good(&coeffs, shift, &colors),
                        "{eq} {col}"
                    );
                }
            }
        }
    }
}

#[test]
fn excellence_is_conjunction_over_offsets() {
    for coeffs in coefficient_lists(2, 2) {
        let s: i64 = coeffs.iter().sum::<i64>() - 1;
        let eqs = excellence_equations(&coeffs);
        let shifts: Vec<i64> = eqs.iter().map(Equation::shift).collect();
        assert_eq!(shifts, (0..=s).map(|j| -j).collect::<Vec<_>>());
        for n in 0..=7 {
            for colors in all_colorings(2, n) {
                let col = Coloring::new(2, colors.clone()).unwrap();
                let expect = (0..=s).all(|j| brute_good(&coeffs, -j, &colors));
                let got = is_excellent_coloring(&coeffs, &col);
                assert_eq!(got, expect, "{coeffs:?} {col}");
                if got {
                    assert!(brute_good(&coeffs, 0, &colors));
                }
            }
        }
    }
}

#[test]
fn homogeneous_regularity_iff_a_unit_coefficient() {
    for coeffs in coefficient_lists(4, 4) {
        // subset of {c_1..c_{k-1}, -1} summing to zero, by enumeration of masks
        let mut signed = coeffs.clone();
        signed.push(-1);
        let zero_subset = (1u32..1 << signed.len()).any(|mask| {
            signed
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, c)| c)
                .sum::<i64>()
                == 0
        });
        let eq = Equation::homogeneous(coeffs.clone()).unwrap();
        let status = eq.regularity_status();
        assert_eq!(
            status == RegularityStatus::HomogeneousRegular,
            zero_subset,
            "{coeffs:?}"
        );
        assert_eq!(zero_subset, coeffs.contains(&1), "{coeffs:?}");
    }
}

#[test]
fn canonical_search_finds_witness_iff_one_exists() {
    for coeffs in coefficient_lists(2, 2) {
        for shift in -2..=2 {
            let eq = Equation::new(coeffs.clone(), shift).unwrap();
            for t in 1..=3u8 {
                let max_n = if t == 3 { 6 } else { 8 };
                for n in 1..=max_n {
                    let exists = all_colorings(t, n).iter().any(|c| brute_good(&coeffs, shift, c));
                    let found = find_good_coloring(&eq, t as usize, n);
                    assert_eq!(found.is_some(), exists, "{eq} t={t} n={n}");
                    if let Some(col) = found {
                        assert!(col.is_canonical());
                        assert!(brute_good(&coeffs, shift, col.colors()));
                    }
                }
            }
        }
    }
}

#[test]
fn witness_is_lex_least_canonical_good_coloring() {
    let eq = Equation::new(vec![1, 1], -1).unwrap();
    for n in 1..=8 {
        let least = all_colorings(2, n)
            .into_iter()
            .find(|c| brute_good(&[1, 1], -1, c) && Coloring::new(2, c.clone()).unwrap().is_canonical());
        assert_eq!(
            find_good_coloring(&eq, 2, n).map(|c| c.colors().to_vec()),
            least,
            "n={n}"
        );
    }
}

#[test]
fn relabeled_good_colorings_stay_good() {
    let eq = Equation::new(vec![1, 1], 0).unwrap();
    let col = Coloring::parse("1 2 2 1 3 3 3 3 3 1 2 2 1", Some(3)).unwrap();
    for perm in [[1u8, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]] {
        let relabeled: Vec<u8> = col.colors().iter().map(|&c| perm[c as usize - 1]).collect();
        let relabeled = Coloring::new(3, relabeled).unwrap();
        assert!(is_good_coloring(&eq, &relabeled));
        assert_eq!(relabeled.canonicalize(), col);
    }
}

#[test]
fn rado_numbers_match_brute_force_on_small_grid() {
    for coeffs in coefficient_lists(2, 2) {
        for shift in -3..=3 {
            let eq = Equation::new(coeffs.clone(), shift).unwrap();
            let res = rado_number(&eq, 2, 8, &SearchOptions::default());
            match brute_rado(&coeffs, shift, 2, 8) {
                Some(r) => assert_eq!(res.exact(), Some(r), "{eq}"),
                None => assert_eq!(res.exact(), None, "{eq}"),
            }
        }
    }
}
