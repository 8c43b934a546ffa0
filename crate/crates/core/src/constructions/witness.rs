use crate::constructions::{
    close_to_equilibrium, perfect_profile, semiperfect_profile, sum_windows, verify_matrix_profile, zig_sequence,
    MatrixProfile,
};
use crate::engine::{is_best_response, EventuallyPeriodicProfile, Profile};
use crate::error::{Error, Result};
use crate::games::{Game, GameSpec, MatrixStrategy, StrategyId, MAX_N};
use crate::Caps;

fn check_n(n: usize) -> Result<()> {
    if !(3..=MAX_N).contains(&n) {
        return Err(Error::Precondition(format!("need 3 <= n <= {MAX_N}, got {n}")));
    }
    Ok(())
}

/// The equilibrium of `Gn` playing the zero matrix everywhere.
pub fn f_profile(n: usize) -> Result<MatrixProfile> {
    check_n(n)?;
    Ok(EventuallyPeriodicProfile::constant(MatrixStrategy::zero(n)))
}

/// The equilibrium of `Gn` playing rows `[0, n]` everywhere.
pub fn g_profile(n: usize) -> Result<MatrixProfile> {
    check_n(n)?;
    Ok(EventuallyPeriodicProfile::constant(MatrixStrategy::g_cell(n)))
}

/// A profile equal to `cell(i)` on `lo..hi`, with the given periods outside
/// taken from `cell` as well.
fn sampled<T: Clone>(lo: i64, hi: i64, left: usize, right: usize, cell: impl Fn(i64) -> T) -> EventuallyPeriodicProfile<T> {
    EventuallyPeriodicProfile {
        anchor: lo,
        left: (lo - left as i64..lo).map(&cell).collect(),
        mid: (lo..hi).map(&cell).collect(),
        right: (hi..hi + right as i64).map(&cell).collect(),
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let mut g = (a, b);
    while g.1 != 0 {
        g = (g.1, g.0 % g.1);
    }
    a / g.0 * b
}

fn verified(game: &Game, p: Profile, ends: [(i64, StrategyId); 2]) -> Result<Profile> {
    let p = p.reduce();
    let ne = p.check_range().all(|i| is_best_response(game, *p.at(i - 1), *p.at(i), *p.at(i + 1)));
    if !ne || ends.iter().any(|&(i, s)| *p.at(i) != s) {
        return Err(Error::Internal(format!("{} witness failed verification", game.spec())));
    }
    Ok(p)
}

fn residues(game: &Game, p: &Profile, name: &str) -> Result<()> {
    if p.left.iter().chain(&p.mid).chain(&p.right).any(|&s| s >= 3) {
        return Err(Error::Precondition(format!("{name} is not an equilibrium of {}", game.spec())));
    }
    Ok(())
}

/// An equilibrium of `G1` playing `s` at `a` and `t` at `b`, for `|a-b| > 1`.
///
/// Steps from the lower endpoint's residue up to the other by `+1` and keeps
/// both tails constant.
pub fn g1_witness(s: StrategyId, t: StrategyId, a: i64, b: i64) -> Result<Profile> {
    if a.abs_diff(b) <= 1 {
        return Err(Error::Precondition(format!("need |a-b| > 1, got a={a}, b={b}")));
    }
    if s >= 3 || t >= 3 {
        return Err(Error::Precondition("G1 strategies are residues 0, 1, 2".into()));
    }
    let game = Game::build(&GameSpec::G1, &Caps::default())?;
    let ((lo, u), (hi, v)) = if a < b { ((a, s), (b, t)) } else { ((b, t), (a, s)) };
    let z: Vec<StrategyId> =
        zig_sequence(3, u as u64, v as u64, (hi - lo + 1) as usize)?.into_iter().map(|r| r as usize).collect();
    let p = EventuallyPeriodicProfile { anchor: lo, left: vec![u], mid: z, right: vec![v] };
    verified(&game, p, [(a, s), (b, t)])
}

/// An equilibrium of `G2` agreeing with `f` at `a` and `g` at `b`, for
/// `|a-b| = 1` or `|a-b| > 2`.
///
/// Adjacent players interleave `f` and `g` by parity. Farther apart, each
/// parity class runs a zig sequence from `f_a` to `g_b` between constant tails.
pub fn g2_witness(f: &Profile, g: &Profile, a: i64, b: i64) -> Result<Profile> {
    let d = a.abs_diff(b);
    if d == 0 || d == 2 {
        return Err(Error::Precondition(format!("need |a-b| = 1 or > 2, got a={a}, b={b}")));
    }
    let game = Game::build(&GameSpec::G2, &Caps::default())?;
    residues(&game, f, "f")?;
    residues(&game, g, "g")?;
    let (fa, gb) = (*f.at(a), *g.at(b));
    let p = if d == 1 {
        let lo = f.anchor.min(g.anchor) - 2;
        let hi = f.mid_end().max(g.mid_end()) + 2;
        let left = lcm(lcm(f.left.len(), g.left.len()), 2);
        let right = lcm(lcm(f.right.len(), g.right.len()), 2);
        sampled(lo, hi, left, right, |k| if (k - a).rem_euclid(2) == 0 { *f.at(k) } else { *g.at(k) })
    } else {
        let ((lo, u), (hi, v)) = if a < b { ((a, fa), (b, gb)) } else { ((b, gb), (a, fa)) };
        let mut mid = vec![u; (hi - lo + 3) as usize];
        for first in [lo - 1, lo] {
            let class: Vec<i64> = (first..=hi + 1).step_by(2).collect();
            let z = zig_sequence(3, u as u64, v as u64, class.len())?;
            for (&pos, r) in class.iter().zip(z) {
                mid[(pos - (lo - 1)) as usize] = r as usize;
            }
        }
        EventuallyPeriodicProfile { anchor: lo - 1, left: vec![u], mid, right: vec![v] }
    };
    verified(&game, p, [(a, fa), (b, gb)])
}

/// An equilibrium of `Gn` agreeing with `f` at `a` and `g` at `b`, for
/// `|a-b|` other than `0` and `n`.
///
/// Closer than `n`, the two endpoints are carried by perfect windows that are
/// added up; farther, by a single semi-perfect window. Either window is then
/// closed to an equilibrium.
pub fn gn_witness(n: usize, f: &MatrixProfile, g: &MatrixProfile, a: i64, b: i64) -> Result<MatrixProfile> {
    check_n(n)?;
    let d = a.abs_diff(b) as usize;
    if d == 0 || d == n {
        return Err(Error::Precondition(format!("need |a-b| not in {{0, {n}}}, got a={a}, b={b}")));
    }
    for (p, name) in [(f, "f"), (g, "g")] {
        if !verify_matrix_profile(n, p) {
            return Err(Error::Precondition(format!("{name} is not an equilibrium of GN:{n}")));
        }
    }
    let (fa, gb) = (f.at(a), g.at(b));
    let window = if d < n {
        sum_windows(&perfect_profile(n, fa, a, b)?, &perfect_profile(n, gb, b, a)?)?
    } else {
        semiperfect_profile(n, fa, gb, a, b)?
    };
    let e = close_to_equilibrium(n, &window)?;
    if e.at(a) != fa || e.at(b) != gb {
        return Err(Error::Internal(format!("GN:{n} witness misses its endpoints at a={a}, b={b}")));
    }
    Ok(e)
}
