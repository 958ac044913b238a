//! Test-side oracle written independently of the library: its own free-group
//! arithmetic, action formulas, composition and inner-automorphism test.
#![allow(dead_code)]

pub type W = Vec<i32>;

pub fn push(w: &mut W, l: i32) {
    if w.last() == Some(&-l) {
        w.pop();
    } else {
        w.push(l);
    }
}

pub fn red(w: &[i32]) -> W {
    let mut out = Vec::new();
    for &l in w {
        push(&mut out, l);
    }
    out
}

pub fn inv(w: &[i32]) -> W {
    w.iter().rev().map(|l| -l).collect()
}

pub fn cat(parts: &[&[i32]]) -> W {
    red(&parts.concat())
}

pub fn pow(w: &[i32], k: i64) -> W {
    let base = if k < 0 { inv(w) } else { w.to_vec() };
    let mut out = Vec::new();
    for _ in 0..k.unsigned_abs() {
        for &l in &base {
            push(&mut out, l);
        }
    }
    out
}

/// Braid-alphabet words: `i` is σ_i, `-i` its inverse, `n` (or `-n`) is T.
pub struct Words {
    pub n: i32,
}

impl Words {
    pub fn s(&self, i: i32) -> W {
        vec![i]
    }
    pub fn si(&self, i: i32) -> W {
        vec![-i]
    }
    pub fn t(&self) -> W {
        vec![self.n]
    }
    pub fn run(&self, lo: i32, hi: i32) -> W {
        (lo..=hi).collect()
    }
    pub fn a0(&self) -> W {
        self.run(1, self.n - 1)
    }
    pub fn a1(&self) -> W {
        self.run(1, self.n - 2)
    }
    pub fn a2(&self) -> W {
        let mut w = self.run(1, self.n - 3);
        w.extend([self.n - 2, self.n - 2]);
        w
    }
    pub fn a(&self) -> W {
        let n = self.n;
        cat(&[&[n - 3, n], &self.a0(), &[-(n - 3)]])
    }
    pub fn b(&self) -> W {
        let n = self.n;
        cat(&[&[n, -(n - 1)], &self.a2()])
    }
    /// γ_k = σ_k σ_{k+2} σ_{k+4}⁻¹ with subscripts mod n.
    pub fn gamma(&self, k: i32) -> W {
        let m = |i: i32| ((i - 1).rem_euclid(self.n)) + 1;
        vec![m(k), m(k + 2), -m(k + 4)]
    }
    pub fn delta(&self, k: i32) -> W {
        vec![k, k + 1, k + 3]
    }
    pub fn y(&self) -> W {
        (1..self.n).step_by(2).collect()
    }
    pub fn z(&self) -> W {
        let mut w: W = (1..=self.n - 5).step_by(2).collect();
        w.push(self.n - 2);
        w
    }
    pub fn phi(&self) -> W {
        let mut w = Vec::new();
        for top in 1..=self.n - 2 {
            w.extend((1..=top).rev());
        }
        w
    }
}

/// Automorphism of F(x1..x_{n-1}) as the list of basis images.
pub type Aut = Vec<W>;

pub struct Oracle {
    pub n: i32,
    gens: Vec<(i32, Aut)>,
}

impl Oracle {
    pub fn new(n: i32) -> Self {
        let mut gens = Vec::new();
        for i in 1..n {
            gens.push((i, Self::sigma(n, i, false)));
            gens.push((-i, Self::sigma(n, i, true)));
        }
        let t = Self::reflection(n);
        gens.push((n, t.clone()));
        gens.push((-n, t));
        Oracle { n, gens }
    }

    /// Image of x_i in F(x1..x_{n-1}), with x_n = (x1 … x_{n-1})⁻¹.
    fn basis(n: i32, i: i32) -> W {
        if i.abs() == n {
            let w: W = inv(&(1..n).collect::<W>());
            if i > 0 { w } else { inv(&w) }
        } else {
            vec![i]
        }
    }

    fn lift(n: i32, w: &[i32]) -> W {
        let mut out = Vec::new();
        for &l in w {
            for m in Self::basis(n, l) {
                push(&mut out, m);
            }
        }
        out
    }

    fn sigma(n: i32, i: i32, inverse: bool) -> Aut {
        (1..n)
            .map(|j| {
                let raw: W = if !inverse {
                    if j == i {
                        vec![i, i + 1, -i]
                    } else if j == i + 1 {
                        vec![i]
                    } else {
                        vec![j]
                    }
                } else if j == i {
                    vec![i + 1]
                } else if j == i + 1 {
                    vec![-(i + 1), i, i + 1]
                } else {
                    vec![j]
                };
                Self::lift(n, &raw)
            })
            .collect()
    }

    fn reflection(n: i32) -> Aut {
        (1..n)
            .map(|j| {
                let c: W = (1..j).collect();
                cat(&[&c, &[-j], &inv(&c)])
            })
            .collect()
    }

    fn apply(f: &Aut, w: &[i32]) -> W {
        let mut out = Vec::new();
        for &l in w {
            let img = &f[(l.unsigned_abs() - 1) as usize];
            if l > 0 {
                for &m in img {
                    push(&mut out, m);
                }
            } else {
                for &m in img.iter().rev() {
                    push(&mut out, -m);
                }
            }
        }
        out
    }

    /// Representative of the outer class with the image of x1 cyclically reduced.
    fn normalize(f: Aut) -> Aut {
        let x = &f[0];
        let mut k = 0;
        while 2 * k + 1 < x.len() && x[k] == -x[x.len() - 1 - k] {
            k += 1;
        }
        if k == 0 {
            return f;
        }
        let c = x[..k].to_vec();
        f.iter().map(|img| cat(&[&inv(&c), img, &c])).collect()
    }

    fn identity(&self) -> Aut {
        (1..self.n).map(|j| vec![j]).collect()
    }

    /// Outer class of a braid-alphabet word; composition `f_uv = f_u ∘ f_v`.
    pub fn eval(&self, w: &[i32]) -> Aut {
        let mut f = self.identity();
        for &l in w {
            let g = &self.gens.iter().find(|(k, _)| *k == l).expect("letter in alphabet").1;
            f = Self::normalize(g.iter().map(|img| Self::apply(&f, img)).collect());
        }
        f
    }

    fn compose(f: &Aut, g: &Aut) -> Aut {
        Self::normalize(g.iter().map(|img| Self::apply(f, img)).collect())
    }

    /// Brute-force inner test: x1 must map to c x1 c⁻¹, and the conjugator
    /// is c x1^k for some |k| bounded by the image lengths.
    pub fn is_inner(&self, f: &Aut) -> bool {
        let x = &f[0];
        let mut k = 0;
        while 2 * k + 1 < x.len() && x[k] == -x[x.len() - 1 - k] {
            k += 1;
        }
        if x[k..x.len() - k] != [1] {
            return false;
        }
        let c = x[..k].to_vec();
        let bound = f.iter().map(Vec::len).sum::<usize>() as i64 + 2;
        (-bound..=bound).any(|e| {
            let w = cat(&[&c, &pow(&[1], e)]);
            f.iter().enumerate().all(|(j, img)| *img == cat(&[&w, &[j as i32 + 1], &inv(&w)]))
        })
    }

    pub fn trivial(&self, w: &[i32]) -> bool {
        self.is_inner(&self.eval(w))
    }

    pub fn equal(&self, u: &[i32], v: &[i32]) -> bool {
        self.trivial(&cat(&[u, &inv(v)]))
    }

    pub fn order(&self, w: &[i32], cap: u32) -> Option<u32> {
        let base = self.eval(w);
        let mut p = base.clone();
        for k in 1..=cap {
            if self.is_inner(&p) {
                return Some(k);
            }
            p = Self::compose(&p, &base);
        }
        None
    }
}

/// Puncture permutation (0-based images), σ_i ↦ (i i+1), T ↦ id.
pub fn perm(n: i32, w: &[i32]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n as usize).collect();
    for &l in w {
        let i = l.unsigned_abs() as usize;
        if (i as i32) < n {
            p.swap(i - 1, i);
        }
    }
    p
}

/// (σ-letter count mod 2, T-letter count mod 2).
pub fn psi(n: i32, w: &[i32]) -> (u8, u8) {
    let t = w.iter().filter(|l| l.abs() == n).count();
    (((w.len() - t) % 2) as u8, (t % 2) as u8)
}

/// Relators of the extended presentation, written out independently.
pub fn relators(n: i32, extended: bool) -> Vec<W> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 2..n {
            out.push(vec![i, j, -i, -j]);
        }
    }
    for i in 1..n - 1 {
        out.push(vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]);
    }
    let a0: W = (1..n).collect();
    out.push(cat(&[&a0, &a0.iter().rev().copied().collect::<W>()]));
    out.push(pow(&a0, n as i64));
    if extended {
        out.push(vec![n, n]);
        for i in 1..n {
            out.push(vec![n, i, n, i]);
        }
    }
    out
}
