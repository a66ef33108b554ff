//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the production structure constants or the incidence
//! computation; each function recomputes its quantity by a different route.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use comin_core::{SchubertClass, Space};

/// Exponents of a root system from its height distribution: the conjugate of
/// the partition `h -> #{roots of height h}`.
pub fn exponents(heights: &[i64]) -> Vec<i64> {
    let top = heights.iter().copied().max().unwrap_or(0);
    let counts: Vec<usize> = (1..=top)
        .map(|h| heights.iter().filter(|&&x| x == h).count())
        .collect();
    let rank = counts.first().copied().unwrap_or(0);
    (0..rank)
        .map(|k| counts.iter().filter(|&&c| c > k).count() as i64)
        .collect()
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut r = num.to_vec();
    let dl = den.len();
    assert_eq!(den[0], 1);
    let mut q = vec![0; num.len() + 1 - dl];
    // Divide from the low end; den has constant term 1.
    for i in 0..q.len() {
        let c = r[i];
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    assert!(r.iter().all(|&x| x == 0), "division is not exact");
    q
}

/// Poincare polynomial `prod [m_i + 1]_t` of a Weyl group with the given exponents.
pub fn weyl_poincare(exps: &[i64]) -> Vec<i128> {
    let mut p = vec![1i128];
    for &m in exps {
        p = poly_mul(&p, &vec![1; m as usize + 1]);
    }
    p
}

/// Poincare polynomial of `W/W_P` for the space, from exponents of `W` and of the Levi.
pub fn quotient_poincare(space: &Space) -> Vec<i128> {
    let rs = space.root_system();
    let alpha = space.alpha();
    let all: Vec<i64> = rs.positive_roots.iter().map(|r| r.height()).collect();
    let levi: Vec<i64> = rs
        .positive_roots
        .iter()
        .filter(|r| r.coeffs[alpha] == 0)
        .map(|r| r.height())
        .collect();
    poly_div_exact(
        &weyl_poincare(&exponents(&all)),
        &weyl_poincare(&exponents(&levi)),
    )
}

/// Number of `W_P` orbits on `W/W_P`, by flood fill with the Levi reflections.
pub fn double_coset_count(space: &Space) -> usize {
    let rs = space.root_system();
    let alpha = space.alpha();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut orbits = 0;
    for k in 0..space.len() {
        let start = space.orbit_point(k).labels.clone();
        if seen.contains(&start) {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start.clone()];
        seen.insert(start);
        while let Some(u) = stack.pop() {
            for j in (0..rs.rank).filter(|&j| j != alpha) {
                let mut v = u.clone();
                let c = v[j];
                for (x, a) in v.iter_mut().zip(&rs.cartan_matrix[j]) {
                    *x -= c * a;
                }
                if seen.insert(v.clone()) {
                    stack.push(v);
                }
            }
        }
    }
    orbits
}

/// Classical Littlewood-Richardson number `c_{lambda mu}^nu`: semistandard
/// fillings of `nu / lambda` with content `mu` whose reverse reading word is a
/// lattice word.
pub fn lr_partition(lambda: &[usize], mu: &[usize], nu: &[usize]) -> u64 {
    let part = |p: &[usize], r: usize| p.get(r).copied().unwrap_or(0);
    let rows = nu.len();
    if lambda.len() > rows || (0..rows).any(|r| part(lambda, r) > part(nu, r)) {
        return 0;
    }
    let total: usize = nu.iter().sum::<usize>() - lambda.iter().sum::<usize>();
    if total != mu.iter().sum::<usize>() {
        return 0;
    }
    let mut grid: Vec<Vec<usize>> = (0..rows).map(|r| vec![0; part(nu, r)]).collect();
    let mut counts = vec![0usize; mu.len() + 1];
    fn fill(
        cell: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        counts: &mut Vec<usize>,
        mu: &[usize],
        lambda: &[usize],
    ) -> u64 {
        if cell == cells.len() {
            return 1;
        }
        let (r, c) = cells[cell];
        let mut total = 0;
        for v in 1..=mu.len() {
            if counts[v] >= mu[v - 1] {
                continue;
            }
            // Lattice condition along the reverse reading word (right to left, top to bottom).
            if v > 1 && counts[v] + 1 > counts[v - 1] {
                continue;
            }
            // Rows weakly increase left to right: cells are visited right to left.
            if c + 1 < grid[r].len() && grid[r][c + 1] != 0 && v > grid[r][c + 1] {
                continue;
            }
            // Columns strictly increase downward.
            let lam = |row: usize| lambda.get(row).copied().unwrap_or(0);
            if r > 0 && c >= lam(r - 1) && grid[r - 1][c] >= v {
                continue;
            }
            grid[r][c] = v;
            counts[v] += 1;
            total += fill(cell + 1, cells, grid, counts, mu, lambda);
            counts[v] -= 1;
            grid[r][c] = 0;
        }
        total
    }
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (part(lambda, r)..part(nu, r)).rev().map(move |c| (r, c)))
        .collect();
    fill(0, &cells, &mut grid, &mut counts, mu, lambda)
}

/// Jeu-de-taquin Littlewood-Richardson number on a minuscule poset: standard
/// fillings of `nu \ lambda` that rectify to the index-order filling of `mu`.
/// Ideals here index classes by codimension.
pub fn jdt_lr(space: &Space, lambda: SchubertClass, mu: SchubertClass, nu: SchubertClass) -> u64 {
    if !lambda.is_subset(nu) || nu.dim() != lambda.dim() + mu.dim() {
        return 0;
    }
    let skew: Vec<usize> = nu.elements().filter(|&x| !lambda.contains(x)).collect();
    let target: BTreeMap<usize, usize> =
        mu.elements().enumerate().map(|(k, x)| (x, k + 1)).collect();

    let mut count = 0;
    let mut filling: HashMap<usize, usize> = HashMap::new();
    fn extend(
        next: usize,
        skew: &[usize],
        lambda: SchubertClass,
        space: &Space,
        filling: &mut HashMap<usize, usize>,
        target: &BTreeMap<usize, usize>,
        count: &mut u64,
    ) {
        let poset = space.poset();
        if next > skew.len() {
            if rectify(space, lambda, filling.clone()) == *target {
                *count += 1;
            }
            return;
        }
        for &x in skew {
            if filling.contains_key(&x) {
                continue;
            }
            let ready = poset
                .lower_covers(x)
                .all(|y| lambda.contains(y) || filling.contains_key(&y));
            if ready {
                filling.insert(x, next);
                extend(next + 1, skew, lambda, space, filling, target, count);
                filling.remove(&x);
            }
        }
    }
    extend(1, &skew, lambda, space, &mut filling, &target, &mut count);
    count
}

fn rectify(
    space: &Space,
    lambda: SchubertClass,
    mut filling: HashMap<usize, usize>,
) -> BTreeMap<usize, usize> {
    let poset = space.poset();
    let mut inner = lambda;
    while inner.dim() > 0 {
        let x = poset.removable(inner).max().unwrap();
        inner = SchubertClass::from_bits_unchecked(inner.bits() & !(1 << x));
        let mut hole = x;
        loop {
            let next = poset
                .upper_covers(hole)
                .filter_map(|y| filling.get(&y).map(|&l| (l, y)))
                .min();
            match next {
                Some((label, y)) => {
                    filling.remove(&y);
                    filling.insert(hole, label);
                    hole = y;
                }
                None => break,
            }
        }
    }
    filling.into_iter().collect()
}

/// Bertram's rim-hook rule for `Gr(k, n)`: the `q`-term of `sigma_1 * sigma_lambda`
/// is `q sigma_{(lambda_2 - 1, .., lambda_k - 1)}` when `lambda` has a full
/// first row and column, and zero otherwise. Returns the codim partition.
pub fn bertram_q_term(k: usize, n: usize, lambda: &[usize]) -> Option<Vec<usize>> {
    if lambda.len() != k || lambda[0] != n - k || lambda[k - 1] == 0 {
        return None;
    }
    let mut out: Vec<usize> = lambda[1..].iter().map(|p| p - 1).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

/// Row `sigma` of the incidence matrix from the degree-one curve
/// neighbourhood: `X_m . s_theta` (Demazure product) with `m = dual sigma`.
/// Returns the single column index with value 1, or `None` for a zero row.
pub fn curve_neighbourhood_row(space: &Space, sigma: usize) -> Option<usize> {
    let rs = space.root_system();
    let alpha = space.alpha();
    let m = space.dual_index(sigma);
    let theta = rs.highest_root();
    assert_eq!(theta.coroot[alpha], 1);

    let reflect_root = |coeffs: &mut Vec<i64>, j: usize| {
        let p: i64 = coeffs
            .iter()
            .zip(&rs.cartan_matrix)
            .map(|(c, row)| c * row[j])
            .sum();
        coeffs[j] -= p;
    };
    // Reduced word of s_theta: walk s_theta(rho) back to rho.
    let mut x: Vec<i64> = vec![1; rs.rank];
    let pair: i64 = x.iter().zip(&theta.coroot).map(|(a, b)| a * b).sum();
    let theta_labels: Vec<i64> = (0..rs.rank)
        .map(|j| {
            theta
                .coeffs
                .iter()
                .zip(&rs.cartan_matrix)
                .map(|(c, row)| c * row[j])
                .sum()
        })
        .collect();
    for (a, t) in x.iter_mut().zip(&theta_labels) {
        *a -= pair * t;
    }
    let mut theta_word = Vec::new();
    while let Some(j) = (0..rs.rank).find(|&j| x[j] < 0) {
        let c = x[j];
        for (v, a) in x.iter_mut().zip(&rs.cartan_matrix[j]) {
            *v -= c * a;
        }
        theta_word.push(j);
    }

    // w = s_p1 .. s_pk in product order.
    let mut product: Vec<usize> = space.orbit_point(m).word.iter().rev().copied().collect();
    for &j in &theta_word {
        let mut image = vec![0i64; rs.rank];
        image[j] = 1;
        for &p in product.iter().rev() {
            reflect_root(&mut image, p);
        }
        if image.iter().all(|&c| c >= 0) {
            product.push(j);
        }
    }
    let mut labels = vec![0i64; rs.rank];
    labels[alpha] = 1;
    for &p in product.iter().rev() {
        let c = labels[p];
        for (v, a) in labels.iter_mut().zip(&rs.cartan_matrix[p]) {
            *v -= c * a;
        }
    }
    let gamma = (0..space.len())
        .find(|&k| space.orbit_point(k).labels == labels)
        .expect("orbit point");
    let want = space.class_dim(m) + space.descriptor().vmrt.dim_v + 1;
    (space.class_dim(gamma) == want).then_some(gamma)
}

/// Spaces of dimension at most `max_dim` in the catalog, as built spaces.
pub fn spaces_up_to(max_dim: usize) -> Vec<std::sync::Arc<Space>> {
    comin_core::all_spaces(max_dim)
        .iter()
        .map(|d| comin_core::space(&comin_core::SpaceSpec::Named(d.family)).unwrap())
        .collect()
}
