use crate::permutation::{CycleForm, Permutation};

/// The intermediate stages of [`foata`], for display.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoataTrace {
    pub input: Permutation,
    pub cycles: CycleForm,
    /// Each canonical cycle written backwards.
    pub blocks: Vec<Vec<u32>>,
    pub output: Permutation,
}

pub fn foata_trace(w: &Permutation) -> FoataTrace {
    let cycles = w.to_cycles();
    let blocks: Vec<Vec<u32>> = cycles.cycles().iter().map(|c| c.iter().rev().copied().collect()).collect();
    let output = Permutation::from_vec_unchecked(blocks.concat());
    FoataTrace { input: w.clone(), cycles, blocks, output }
}

/// Foata's first transformation: write `w` in canonical cycle form (largest
/// element last in each cycle, cycles by increasing largest element), reverse
/// every cycle and erase the parentheses.
///
/// Every `(X, Y)`-excedance of `w` becomes an `(Y, X)`-descent of the image:
/// `des_{X,Y}(foata(w)) = exc_{Y,X}(w)`.
pub fn foata(w: &Permutation) -> Permutation {
    foata_trace(w).output
}

/// Inverse of [`foata`]. The reversed cycles start at the left-to-right
/// maxima of `τ`, so cutting there recovers them.
pub fn foata_inverse(tau: &Permutation) -> Permutation {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut max = 0;
    for &e in tau.iter() {
        if e > max {
            max = e;
            cycles.push(Vec::new());
        }
        cycles.last_mut().unwrap().push(e);
    }
    for c in &mut cycles {
        c.reverse();
    }
    let form = CycleForm::new(cycles).expect("blocks of a permutation partition [n]");
    Permutation::from_cycles(&form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let t = foata_trace(&p("61437258"));
        assert_eq!(t.cycles.to_string(), "(34)(216)(57)(8)");
        assert_eq!(t.output, p("43612758"));
        assert_eq!(foata_inverse(&p("43612758")), p("61437258"));
    }

    #[test]
    fn identity_fixed() {
        for n in 0..6 {
            let id = Permutation::identity(n);
            assert_eq!(foata(&id), id);
            assert_eq!(foata_inverse(&id), id);
        }
    }
}
