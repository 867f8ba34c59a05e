/// Dense square bit matrix, row-major in 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let stride = n.div_ceil(64);
        BitMatrix { n, stride, bits: vec![0; n * stride] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.bits[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.stride + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Each row as a lowercase hex string of its little-endian words.
    pub fn to_hex_rows(&self) -> Vec<String> {
        self.bits
            .chunks(self.stride)
            .map(|row| row.iter().map(|w| format!("{w:016x}")).collect())
            .collect()
    }

    pub fn from_hex_rows(n: usize, rows: &[String]) -> Option<Self> {
        let mut m = BitMatrix::new(n);
        if rows.len() != n {
            return None;
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != 16 * m.stride {
                return None;
            }
            for k in 0..m.stride {
                let w = u64::from_str_radix(row.get(16 * k..16 * k + 16)?, 16).ok()?;
                m.bits[i * m.stride + k] = w;
            }
        }
        // Bits past column n must be clear.
        for i in 0..n {
            for j in n..m.stride * 64 {
                if (m.bits[i * m.stride + j / 64] >> (j % 64)) & 1 == 1 {
                    return None;
                }
            }
        }
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_and_hex_round_trip() {
        let mut m = BitMatrix::new(70);
        m.set(0, 0, true);
        m.set(3, 65, true);
        m.set(69, 69, true);
        m.set(69, 69, false);
        assert!(m.get(3, 65));
        assert!(!m.get(69, 69));
        assert_eq!(m.count_ones(), 2);
        let back = BitMatrix::from_hex_rows(70, &m.to_hex_rows()).unwrap();
        assert_eq!(back, m);
        assert!(BitMatrix::from_hex_rows(71, &m.to_hex_rows()).is_none());
    }
}
