use crate::error::{Error, Result};

/// `k` residues mod `n` from `u` to `v`, each differing from the previous
/// one by `0` or `1`.
///
/// Takes the `(v - u) mod n` unit steps first and then stays put.
pub fn zig_sequence(n: u64, u: u64, v: u64, k: usize) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    if (k as u64) < n {
        return Err(Error::Precondition(format!("a zig sequence mod {n} needs at least {n} terms, got {k}")));
    }
    let (u, v) = (u % n, v % n);
    let gap = ((v + n - u) % n) as usize;
    let mut z = Vec::with_capacity(k);
    let mut cur = u;
    z.push(cur);
    for i in 1..k {
        if i <= gap {
            cur = (cur + 1) % n;
        }
        z.push(cur);
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(zig_sequence(3, 0, 2, 3).unwrap(), [0, 1, 2]);
        assert_eq!(zig_sequence(5, 3, 3, 5).unwrap(), [3; 5]);
        assert_eq!(zig_sequence(3, 2, 1, 4).unwrap(), [2, 0, 1, 1]);
        assert!(zig_sequence(3, 0, 2, 2).is_err());
        assert!(zig_sequence(0, 0, 0, 2).is_err());
    }

    #[test]
    fn all_small_cases_hit_both_ends_with_unit_steps() {
        for n in 1..8u64 {
            for k in n as usize..n as usize + 4 {
                for u in 0..n {
                    for v in 0..n {
                        let z = zig_sequence(n, u, v, k).unwrap();
                        assert_eq!(z.len(), k);
                        assert_eq!((z[0], z[k - 1]), (u, v));
                        assert!(z.windows(2).all(|w| (w[1] + n - w[0]) % n <= 1));
                    }
                }
            }
        }
    }
}
