//! Finite differences and the stabilization certificate used for
//! multiplicities.

/// `order`-th forward differences of `values`.
pub fn differences(values: &[i64], order: usize) -> Vec<i64> {
    let mut v = values.to_vec();
    for _ in 0..order {
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
    }
    v
}

/// A difference sequence that became constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilization {
    /// The stable value of the `order`-th difference.
    pub value: i64,
    /// Index (into the difference sequence) where the run of equal values starts.
    pub window_start: usize,
}

/// First run of `run` consecutive equal `order`-th differences, if any.
pub fn stabilized_difference(values: &[i64], order: usize, run: usize) -> Option<Stabilization> {
    let d = differences(values, order);
    if run == 0 || d.len() < run {
        return None;
    }
    (0..=d.len() - run).find_map(|s| {
        let w = &d[s..s + run];
        w.iter().all(|&x| x == w[0]).then_some(Stabilization {
            value: w[0],
            window_start: s,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_stabilizes() {
        let v: Vec<i64> = (0..8).map(|t| 2 * t * t + t + 5).collect();
        assert_eq!(differences(&v, 2), vec![4; 6]);
        let s = stabilized_difference(&v, 2, 3).unwrap();
        assert_eq!((s.value, s.window_start), (4, 0));
        assert!(stabilized_difference(&[1, 2, 4, 8, 16, 32], 2, 3).is_none());
    }
}
