//! Row reduction over the prime fields GF(2), GF(3), GF(5) and GF(7).

pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

fn inverse(x: u32, p: u32) -> u32 {
    // Fermat: x^(p-2)
    let mut result = 1;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rank of the given vectors over GF(`p`). Each vector has the same length;
/// entries are already reduced mod `p`.
pub fn rank<'a, I>(vectors: I, p: u32) -> usize
where
    I: IntoIterator<Item = &'a [u8]>,
{
    let mut rows: Vec<Vec<u32>> = vectors
        .into_iter()
        .map(|v| v.iter().map(|&x| u32::from(x)).collect())
        .collect();
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inverse(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i == rank || rows[i][col] == 0 {
                continue;
            }
            let factor = rows[i][col];
            let pivot = rows[rank].clone();
            for (x, &q) in rows[i][col..width].iter_mut().zip(&pivot[col..width]) {
                *x = (*x + p - factor * q % p) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
