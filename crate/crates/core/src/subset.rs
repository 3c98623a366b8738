//! Subsets of {0, .., n} as bitmasks.

pub type Mask = u32;

pub fn full_mask(n_elems: usize) -> Mask {
    assert!(n_elems <= 32);
    if n_elems == 32 {
        !0
    } else {
        (1u32 << n_elems) - 1
    }
}

pub fn bit(i: usize) -> Mask {
    1u32 << i
}

pub fn contains(m: Mask, i: usize) -> bool {
    m & bit(i) != 0
}

pub fn card(m: Mask) -> usize {
    m.count_ones() as usize
}

pub fn elems(m: Mask) -> Vec<usize> {
    (0..32).filter(|&i| contains(m, i)).collect()
}

pub fn mask_of(elems: &[usize]) -> Mask {
    elems.iter().fold(0, |acc, &i| acc | bit(i))
}

/// All non-empty submasks of m.
pub fn submasks(m: Mask) -> Vec<Mask> {
    let mut out = Vec::new();
    let mut s = m;
    loop {
        if s != 0 {
            out.push(s);
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & m;
    }
    out
}

/// Submasks of `universe` that contain `lower`.
pub fn supermasks_within(lower: Mask, universe: Mask) -> Vec<Mask> {
    assert_eq!(lower & universe, lower);
    let free = universe & !lower;
    let mut out = Vec::new();
    let mut s = free;
    loop {
        out.push(lower | s);
        if s == 0 {
            break;
        }
        s = (s - 1) & free;
    }
    out
}

pub fn mask_str(m: Mask) -> String {
    let v: Vec<String> = elems(m).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_counts() {
        assert_eq!(submasks(0b1011).len(), 7);
        assert_eq!(supermasks_within(0b001, 0b111).len(), 4);
    }
}
