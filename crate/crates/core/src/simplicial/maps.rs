//! Maps of finite ordinals `[m] -> [n]`, stored as value vectors of length
//! `m + 1`.

/// A generator of the category of finite ordinals with all set maps, seen
/// through its contravariant action on simplices of level `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    /// `d_i`: level `n` to `n - 1`, induced by the injection skipping `i`.
    Face(usize),
    /// `s_i`: level `n` to `n + 1`, induced by the surjection hitting `i` twice.
    Degeneracy(usize),
    /// `t_i`: level `n` to `n`, induced by the transposition of `i` and `i + 1`.
    Swap(usize),
}

impl Op {
    /// Level reached from level `n`.
    pub fn target_level(self, n: usize) -> usize {
        match self {
            Op::Face(_) => n - 1,
            Op::Degeneracy(_) => n + 1,
            Op::Swap(_) => n,
        }
    }

    /// The underlying map of ordinals, for an action starting at level `n`.
    pub fn ordinal_map(self, n: usize) -> Vec<usize> {
        match self {
            Op::Face(i) => (0..n).map(|k| if k < i { k } else { k + 1 }).collect(),
            Op::Degeneracy(i) => (0..=n + 1).map(|k| if k <= i { k } else { k - 1 }).collect(),
            Op::Swap(i) => (0..=n)
                .map(|k| match k {
                    k if k == i => i + 1,
                    k if k == i + 1 => i,
                    k => k,
                })
                .collect(),
        }
    }
}

/// `f ∘ g`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

pub fn is_injective(f: &[usize]) -> bool {
    let mut seen = f.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// Sorted distinct values of `f`.
pub fn image(f: &[usize]) -> Vec<usize> {
    let mut v = f.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// `f` followed by the order-preserving bijection `Im f ≅ [q]`.
pub fn rank_map(f: &[usize]) -> Vec<usize> {
    let im = image(f);
    f.iter().map(|x| im.binary_search(x).expect("value in image")).collect()
}

/// All maps `[m] -> [n]`, lexicographically.
pub fn all_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; m + 1];
    loop {
        out.push(cur.clone());
        let mut i = m + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

/// All surjections `[m] -> [n]`, lexicographically.
pub fn surjections(m: usize, n: usize) -> Vec<Vec<usize>> {
    if n > m {
        return Vec::new();
    }
    all_maps(m, n).into_iter().filter(|f| image(f).len() == n + 1).collect()
}

/// Injections `[m] -> [n]`, lexicographically.
pub fn injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    if m > n {
        return Vec::new();
    }
    all_maps(m, n).into_iter().filter(|f| is_injective(f)).collect()
}

/// Surjections `[m] -> [p]` in restricted-growth form (each new value is one
/// more than the largest seen so far), for all `p`.
pub fn restricted_growth(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn rec(m: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max + 1 {
            cur.push(v);
            rec(m, cur, max.max(v), out);
            cur.pop();
        }
    }
    cur.push(0);
    rec(m, &mut cur, 0, &mut out);
    out
}

/// The generators whose successive actions realize the action of `alpha`
/// (a map `[m] -> [n]`) on level-`n` simplices, in order of application.
///
/// `alpha = ι ∘ μ ∘ ρ` with `ι` a monotone injection, `μ` a monotone
/// surjection and `ρ` a permutation; the action of `alpha` is that of `ι`,
/// then `μ`, then `ρ`.
pub fn factor(alpha: &[usize], n: usize) -> Vec<Op> {
    let m = alpha.len() - 1;
    let im = image(alpha);
    let mut ops = Vec::new();

    // ι: faces for the missing values, largest first.
    for j in (0..=n).rev() {
        if im.binary_search(&j).is_err() {
            ops.push(Op::Face(j));
        }
    }

    // π sorts positions stably by value; α∘π is monotone.
    let mut pi: Vec<usize> = (0..=m).collect();
    pi.sort_by_key(|&k| alpha[k]);
    let sorted: Vec<usize> = pi.iter().map(|&k| im.binary_search(&alpha[k]).expect("in image")).collect();

    // μ = μ'' ∘ σ_p with p the first repeated position; the action of σ_p
    // comes last, so degeneracies are applied in reverse order of discovery.
    let mut mu = sorted;
    let mut degeneracies = Vec::new();
    while let Some(p) = (0..mu.len().saturating_sub(1)).find(|&p| mu[p] == mu[p + 1]) {
        degeneracies.push(p);
        mu.remove(p + 1);
    }
    ops.extend(degeneracies.into_iter().rev().map(Op::Degeneracy));

    // ρ = π^{-1}. Bubble-sorting the sequence ρ records b_1..b_t with
    // ρ ∘ τ_{b1} ∘ ... ∘ τ_{bt} = id, so ρ = τ_{bt} ∘ ... ∘ τ_{b1} and the
    // action applies t_{bt} first.
    let mut rho = vec![0; m + 1];
    for (k, &p) in pi.iter().enumerate() {
        rho[p] = k;
    }
    let mut swaps = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for b in 0..m {
            if rho[b] > rho[b + 1] {
                rho.swap(b, b + 1);
                swaps.push(b);
                changed = true;
            }
        }
    }
    ops.extend(swaps.into_iter().rev().map(Op::Swap));
    ops
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composes the ordinal maps of a generator sequence: the action of
    /// `ops[0]` first means the map `ops[0] ∘ ops[1] ∘ ...`.
    fn compose_ops(ops: &[Op], n: usize) -> Vec<usize> {
        let mut level = n;
        let mut acc: Option<Vec<usize>> = None;
        for op in ops {
            let map = op.ordinal_map(level);
            acc = Some(match acc {
                None => map,
                Some(a) => compose(&a, &map),
            });
            level = op.target_level(level);
        }
        acc.unwrap_or_else(|| identity(n))
    }

    #[test]
    fn factorization_recovers_every_map() {
        for m in 0..=3 {
            for n in 0..=3 {
                for alpha in all_maps(m, n) {
                    let ops = factor(&alpha, n);
                    assert_eq!(compose_ops(&ops, n), alpha, "alpha = {alpha:?}");
                }
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(all_maps(2, 1).len(), 8);
        assert_eq!(surjections(2, 1).len(), 6);
        assert_eq!(injections(1, 2).len(), 6);
        // Bell numbers.
        assert_eq!(restricted_growth(0).len(), 1);
        assert_eq!(restricted_growth(2).len(), 5);
        assert_eq!(restricted_growth(3).len(), 15);
        assert_eq!(rank_map(&[4, 1, 4]), vec![1, 0, 1]);
    }
}
