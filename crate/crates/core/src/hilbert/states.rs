/// Strictly increasing `d`-tuples from `{1, …, n}` in lexicographic order:
/// the occupation labels of `d` fermions in `n` one-particle states.
#[derive(Clone, Debug)]
pub struct WedgeStates {
    n: usize,
    current: Option<Vec<usize>>,
}

pub fn wedge_states(n: usize, d: usize) -> WedgeStates {
    WedgeStates {
        n,
        current: (d <= n).then(|| (1..=d).collect()),
    }
}

impl Iterator for WedgeStates {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let d = out.len();
        let mut next = out.clone();
        // rightmost slot that can still move up
        if let Some(i) = (0..d).rev().find(|&i| next[i] < self.n - (d - 1 - i)) {
            next[i] += 1;
            for j in i + 1..d {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Sign of the permutation sorting `labels`; `None` if an index repeats
/// (the wedge vanishes).
pub fn permutation_sign(labels: &[usize]) -> Option<i8> {
    let mut inversions = 0usize;
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if labels[i] == labels[j] {
                return None;
            }
            if labels[i] > labels[j] {
                inversions += 1;
            }
        }
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Sorted label and the sign relating it to `labels`.
pub fn canonical_label(labels: &[usize]) -> Option<(Vec<usize>, i8)> {
    let sign = permutation_sign(labels)?;
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    Some((sorted, sign))
}
