use std::fmt;

/// Largest variable count a monomial can hold.
pub const MAX_VARS: usize = 24;

/// Exponent vector. The derived order compares total degree first and then
/// exponents lexicographically with `x0 > x1 > ...`, which is graded lex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    deg: u16,
    e: [u8; MAX_VARS],
}

impl Mono {
    pub fn one() -> Self {
        Mono { deg: 0, e: [0; MAX_VARS] }
    }

    pub fn var(i: usize, k: u32) -> Self {
        let mut m = Mono::one();
        m.set(i, k);
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Mono::one();
        for (i, &k) in exps.iter().enumerate() {
            m.set(i, k);
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn set(&mut self, i: usize, k: u32) {
        assert!(k <= u8::MAX as u32, "exponent {k} overflows");
        self.deg = self.deg - self.e[i] as u16 + k as u16;
        self.e[i] = k as u8;
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.e[..nvars].iter().map(|&x| x as u32).collect()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for i in 0..MAX_VARS {
            let s = self.e[i] as u16 + o.e[i] as u16;
            assert!(s <= u8::MAX as u16, "exponent overflow in product");
            r.e[i] = s as u8;
        }
        r.deg = self.deg + o.deg;
        r
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut r = *self;
        for i in 0..MAX_VARS {
            if self.e[i] < o.e[i] {
                return None;
            }
            r.e[i] = self.e[i] - o.e[i];
        }
        r.deg = self.deg - o.deg;
        Some(r)
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] <= o.e[i])
    }

    /// Copy with the exponent of `i` cleared.
    pub fn without(&self, i: usize) -> Mono {
        let mut r = *self;
        r.set(i, 0);
        r
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&i| self.e[i] != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x = Mono::var(0, 1);
        let y = Mono::var(1, 1);
        let y2 = Mono::var(1, 2);
        assert!(x > y);
        assert!(y2 > x);
        assert!(Mono::from_exps(&[1, 1]) > Mono::from_exps(&[0, 2]));
    }
}
