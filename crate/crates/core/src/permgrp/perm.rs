use std::fmt;

use super::PermError;

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = 256;

/// A bijection of `0..n`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u8]>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} above {MAX_DEGREE}");
        Perm {
            images: (0..n).map(|i| i as u8).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijective(images.to_vec()));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// `i ↦ i + k (mod n)`.
    pub fn rotation(n: usize, k: usize) -> Self {
        let imgs: Vec<usize> = (0..n).map(|i| (i + k) % n.max(1)).collect();
        Self::from_images(&imgs).expect("rotation is bijective")
    }

    /// `i ↦ n - 1 - i`.
    pub fn reversal(n: usize) -> Self {
        let imgs: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
        Self::from_images(&imgs).expect("reversal is bijective")
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Whether the permutation maps `subset` onto itself.
    pub fn stabilizes(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.degree()];
        for &a in subset {
            member[a] = true;
        }
        subset.iter().all(|&a| member[self.apply(a)])
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Parity: `true` for odd permutations.
    pub fn is_odd(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let a = Perm::from_images(&[1, 2, 0]).unwrap();
        let b = Perm::transposition(3, 0, 1);
        assert_eq!(a.compose(&b).images(), vec![2, 1, 0]);
        assert_eq!(b.compose(&a).images(), vec![0, 2, 1]);
    }

    #[test]
    fn inverse_and_identity() {
        let a = Perm::from_images(&[3, 0, 2, 1]).unwrap();
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(!a.is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(&[0, 0]).is_err());
        assert!(Perm::from_images(&[0, 2]).is_err());
    }

    #[test]
    fn display_cycles() {
        assert_eq!(Perm::rotation(5, 1).to_string(), "(0 1 2 3 4)");
        assert_eq!(Perm::identity(3).to_string(), "()");
        assert_eq!(Perm::reversal(4).to_string(), "(0 3)(1 2)");
        assert!(Perm::transposition(4, 1, 2).is_odd());
        assert!(!Perm::rotation(5, 2).is_odd());
    }
}
