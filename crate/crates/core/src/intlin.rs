//! Integer linear algebra: Smith normal form for solving congruence systems
//! and the normal form of alternating forms (symplectic reduction over ℤ).

use crate::modring::gcd;

type Mat = Vec<Vec<i128>>;

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal with `d₀ | d₁ | …`.
#[derive(Debug, Clone)]
pub(crate) struct Smith {
    pub u: Mat,
    pub v: Mat,
    pub diag: Vec<i128>,
}

pub(crate) fn smith(a: &[Vec<i64>], cols: usize) -> Smith {
    let rows = a.len();
    let mut d: Mat = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let rank_bound = rows.min(cols);
    let mut t = 0;
    while t < rank_bound {
        // pivot: smallest nonzero entry in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        let p = d[t][t];
        for i in t + 1..rows {
            let q = d[i][t].div_euclid(p);
            if q != 0 {
                for j in 0..cols {
                    d[i][j] -= q * d[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= q * u[t][j];
                }
            }
            if d[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = d[t][j].div_euclid(p);
            if q != 0 {
                for i in 0..rows {
                    d[i][j] -= q * d[i][t];
                }
                for i in 0..cols {
                    v[i][j] -= q * v[i][t];
                }
            }
            if d[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold any entry not divisible by the pivot into row t
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if d[i][j] % p != 0 {
                    for k in 0..cols {
                        d[t][k] += d[i][k];
                    }
                    for k in 0..rows {
                        u[t][k] += u[i][k];
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if p < 0 {
            for k in 0..cols {
                d[t][k] = -d[t][k];
            }
            for k in 0..rows {
                u[t][k] = -u[t][k];
            }
        }
        t += 1;
    }
    let diag = (0..rank_bound).map(|i| d[i][i]).collect();
    Smith { u, v, diag }
}

/// Solution set of `A·x ≡ b (mod r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CongruenceSolution {
    pub particular: Option<Vec<u32>>,
    /// Generators of the homogeneous solution group.
    pub generators: Vec<Vec<u32>>,
    /// Number of solutions (0 when inconsistent).
    pub count: u128,
}

fn inverse_mod(a: i128, m: i128) -> i128 {
    // extended Euclid; a and m coprime
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m)
}

pub(crate) fn solve_congruences(
    a: &[Vec<i64>],
    b: &[i64],
    cols: usize,
    r: u32,
) -> CongruenceSolution {
    let rows = a.len();
    let rr = r as i128;
    let sm = smith(a, cols);
    let c: Vec<i128> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|k| sm.u[i][k] * b[k] as i128)
                .sum::<i128>()
                .rem_euclid(rr)
        })
        .collect();

    let mut y = vec![0i128; cols];
    let mut gens_y: Vec<Vec<i128>> = Vec::new();
    let mut count: u128 = 1;
    let mut consistent = true;
    for i in 0..rows {
        let di = if i < sm.diag.len() { sm.diag[i] } else { 0 };
        if di == 0 {
            if c[i] != 0 {
                consistent = false;
            }
            continue;
        }
        let g = gcd(di.unsigned_abs() as u64, r as u64) as i128;
        if c[i] % g != 0 {
            consistent = false;
            continue;
        }
        let m = rr / g;
        y[i] = if m == 1 {
            0
        } else {
            ((c[i] / g) * inverse_mod(di / g, m)).rem_euclid(m)
        };
        if g > 1 {
            let mut e = vec![0i128; cols];
            e[i] = m;
            gens_y.push(e);
            count *= g as u128;
        }
    }
    let nonzero = sm.diag.iter().filter(|&&x| x != 0).count();
    for j in nonzero..cols {
        let mut e = vec![0i128; cols];
        e[j] = 1;
        gens_y.push(e);
        count *= r as u128;
    }
    let to_x = |yv: &[i128]| -> Vec<u32> {
        (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|k| sm.v[i][k] * yv[k])
                    .sum::<i128>()
                    .rem_euclid(rr) as u32
            })
            .collect()
    };
    if !consistent {
        return CongruenceSolution {
            particular: None,
            generators: Vec::new(),
            count: 0,
        };
    }
    CongruenceSolution {
        particular: Some(to_x(&y)),
        generators: gens_y.iter().map(|g| to_x(g)).collect(),
        count,
    }
}

/// Normal form of an alternating integer form on `ℤᵏ`.
///
/// `basis[j]` expresses the new basis vector `f_j` in the original generators;
/// `coords[i]` expresses generator `e_i` in the new basis. The form is
/// block-diagonal: `⟨f_{2s}, f_{2s+1}⟩ = divisors[s] > 0`, all other pairings
/// vanish, and `f_j` for `j ≥ 2·divisors.len()` span the radical.
#[derive(Debug, Clone)]
pub(crate) struct AlternatingReduction {
    pub basis: Vec<Vec<i64>>,
    pub coords: Vec<Vec<i64>>,
    pub divisors: Vec<i64>,
}

pub(crate) fn alternating_normal_form(omega: &[Vec<i64>]) -> AlternatingReduction {
    let k = omega.len();
    let mut m: Mat = omega
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut b = identity(k);
    let mut c = identity(k);

    // f_l ← f_l + q·f_src
    let add = |m: &mut Mat, b: &mut Mat, c: &mut Mat, l: usize, src: usize, q: i128| {
        if q == 0 {
            return;
        }
        for x in 0..k {
            b[l][x] += q * b[src][x];
        }
        for x in 0..k {
            m[l][x] += q * m[src][x];
        }
        for x in 0..k {
            m[x][l] += q * m[x][src];
        }
        for row in c.iter_mut() {
            row[src] -= q * row[l];
        }
    };
    let swap = |m: &mut Mat, b: &mut Mat, c: &mut Mat, i: usize, j: usize| {
        if i == j {
            return;
        }
        b.swap(i, j);
        m.swap(i, j);
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in c.iter_mut() {
            row.swap(i, j);
        }
    };

    let mut divisors = Vec::new();
    let mut t = 0;
    while t + 1 < k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..k {
                for j in t..k {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((i, j)) = best else { break };
            // bring the pair to (t, t+1)
            if j == t {
                swap(&mut m, &mut b, &mut c, i, t + 1);
            } else {
                swap(&mut m, &mut b, &mut c, i, t);
                swap(&mut m, &mut b, &mut c, j, t + 1);
            }
            let p = m[t][t + 1];
            let mut clean = true;
            for l in t + 2..k {
                let q = m[t][l].div_euclid(p);
                add(&mut m, &mut b, &mut c, l, t + 1, -q);
                let q2 = m[t + 1][l].div_euclid(m[t + 1][t]);
                add(&mut m, &mut b, &mut c, l, t, -q2);
                if m[t][l] != 0 || m[t + 1][l] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[t][t + 1] == 0 {
            break;
        }
        if m[t][t + 1] < 0 {
            // negate f_{t+1}
            for x in 0..k {
                b[t + 1][x] = -b[t + 1][x];
                m[t + 1][x] = -m[t + 1][x];
                m[x][t + 1] = -m[x][t + 1];
            }
            for row in c.iter_mut() {
                row[t + 1] = -row[t + 1];
            }
        }
        divisors.push(m[t][t + 1] as i64);
        t += 2;
    }
    let conv = |mat: Mat| -> Vec<Vec<i64>> {
        mat.into_iter()
            .map(|r| r.into_iter().map(|x| x as i64).collect())
            .collect()
    };
    AlternatingReduction {
        basis: conv(b),
        coords: conv(c),
        divisors,
    }
}
