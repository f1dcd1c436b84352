//! graph6 encoding.
//!
//! Size prefix: one byte `n + 63` for `n < 63`, `126` plus three 6-bit
//! bytes for `n < 258048`, and `126 126` plus six bytes beyond that. The
//! body lists the upper triangle column by column (`(0,1), (0,2), (1,2),
//! (0,3), ...`), six bits per byte, most significant first, each byte
//! offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.is_adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}

pub fn decode(s: &str) -> Result<Graph> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!(
            "byte {b} outside the printable range 63..=126"
        )));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated 8-byte size prefix".into()));
            }
            (
                rest[..6].iter().fold(0, |acc, &b| (acc << 6) | six(b)),
                &rest[6..],
            )
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated 4-byte size prefix".into()));
            }
            (
                rest[..3].iter().fold(0, |acc, &b| (acc << 6) | six(b)),
                &rest[3..],
            )
        }
        [b, rest @ ..] => (six(*b), rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if six(body[k / 6]) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if bits % 6 != 0 && six(body[expected - 1]) & ((1 << (6 - bits % 6)) - 1) != 0 {
        return Err(Error::Graph6("non-zero padding bits".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_bw() {
        assert_eq!(encode(&Graph::complete(3)), "Bw");
        assert_eq!(decode("Bw").unwrap(), Graph::complete(3));
    }

    #[test]
    fn small_known_strings() {
        // petgraph's five-vertex example: edges a-c, a-e, b-d, d-e
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(encode(&Graph::empty(1)), "@");
    }

    #[test]
    fn long_size_prefix() {
        let g = Graph::cycle(70);
        let s = encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(decode("").is_err());
        assert!(decode("Bww").is_err());
        assert!(decode("B\u{7f}").is_err());
        // K2 is "A_"; "A`" sets a padding bit
        assert!(decode("A_").is_ok());
        assert!(decode("A`").is_err());
    }
}
