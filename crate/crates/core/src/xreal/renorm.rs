use super::eft::two_sum;

/// Renormalizes `K` overlapping terms, given roughly in decreasing order of
/// magnitude, into four nonoverlapping components.
///
/// A bottom-up pass of exact two-sums makes the leading term the rounded
/// total; a top-down pass then emits components whenever a two-sum leaves a
/// nonzero remainder. The fifth component is folded into the fourth with a
/// single rounding, which is the only inexact step.
#[inline(always)]
pub(crate) fn renorm4<const K: usize>(t: [f64; K]) -> [f64; 4] {
    let mut e = t;
    let mut s = e[K - 1];
    for i in (0..K - 1).rev() {
        let (hi, lo) = two_sum(e[i], s);
        e[i + 1] = lo;
        s = hi;
    }
    e[0] = s;

    let mut out = [0.0f64; 5];
    let mut n = 0;
    let mut r = e[0];
    let mut i = 1;
    while i < K {
        let (s, err) = two_sum(r, e[i]);
        i += 1;
        if err != 0.0 {
            out[n] = s;
            n += 1;
            r = err;
            if n == 4 {
                let mut tail = 0.0;
                for &x in e[i..].iter().rev() {
                    tail += x;
                }
                r += tail;
                break;
            }
        } else {
            r = s;
        }
    }
    out[n] = r;
    [out[0], out[1], out[2], out[3] + out[4]]
}

/// Renormalizes four arbitrary components, in any order and with any
/// overlap, to a fixed point of [`renorm4`].
pub(crate) fn renorm_fixed(mut c: [f64; 4]) -> [f64; 4] {
    for _ in 0..8 {
        c.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
        let next = renorm4(c);
        if next == c {
            break;
        }
        c = next;
    }
    c
}
