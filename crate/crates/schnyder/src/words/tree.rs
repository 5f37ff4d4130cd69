use thiserror::Error;

/// A Dyck path: steps in `{+1, -1}` with nonnegative partial sums and zero
/// total.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DyckPath {
    steps: Vec<i8>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DyckError {
    #[error("step {index} is {value}, not +1/-1")]
    BadStep { index: usize, value: i8 },
    #[error("partial sum drops below zero at step {index}")]
    NegativeExcursion { index: usize },
    #[error("path ends at height {height}, not zero")]
    NonzeroEnd { height: i64 },
}

impl DyckPath {
    pub fn new(steps: Vec<i8>) -> Result<DyckPath, DyckError> {
        let mut h = 0i64;
        for (i, &s) in steps.iter().enumerate() {
            if s != 1 && s != -1 {
                return Err(DyckError::BadStep { index: i, value: s });
            }
            h += s as i64;
            if h < 0 {
                return Err(DyckError::NegativeExcursion { index: i });
            }
        }
        if h != 0 {
            return Err(DyckError::NonzeroEnd { height: h });
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// A rooted plane tree: the root vertex with its ordered list of subtrees.
/// A tree with `m` edges corresponds to a Dyck path of length `2m` via the
/// clockwise contour (`+1` away from the root, `-1` back).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PlaneTree {
    pub children: Vec<PlaneTree>,
}

impl PlaneTree {
    pub fn leaf() -> PlaneTree {
        PlaneTree { children: Vec::new() }
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(|c| c.edge_count() + 1).sum()
    }

    pub fn contour(&self) -> DyckPath {
        let mut steps = Vec::with_capacity(2 * self.edge_count());
        fn rec(t: &PlaneTree, steps: &mut Vec<i8>) {
            for c in &t.children {
                steps.push(1);
                rec(c, steps);
                steps.push(-1);
            }
        }
        rec(self, &mut steps);
        DyckPath::new(steps).expect("contour of a tree is a Dyck path")
    }

    pub fn from_dyck(d: &DyckPath) -> PlaneTree {
        fn rec(steps: &[i8], pos: &mut usize) -> PlaneTree {
            let mut children = Vec::new();
            while *pos < steps.len() && steps[*pos] == 1 {
                *pos += 1;
                children.push(rec(steps, pos));
                debug_assert_eq!(steps[*pos], -1);
                *pos += 1;
            }
            PlaneTree { children }
        }
        let mut pos = 0;
        let t = rec(d.steps(), &mut pos);
        debug_assert_eq!(pos, d.len());
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(children: Vec<PlaneTree>) -> PlaneTree {
        PlaneTree { children }
    }

    #[test]
    fn contour_examples() {
        let single = tree(vec![PlaneTree::leaf()]);
        assert_eq!(single.contour().steps(), &[1, -1]);

        let path2 = tree(vec![tree(vec![PlaneTree::leaf()])]);
        assert_eq!(path2.contour().steps(), &[1, 1, -1, -1]);

        let star2 = tree(vec![PlaneTree::leaf(), PlaneTree::leaf()]);
        assert_eq!(star2.contour().steps(), &[1, -1, 1, -1]);
    }

    #[test]
    fn invalid_dyck() {
        assert!(DyckPath::new(vec![-1, 1]).is_err());
        assert!(DyckPath::new(vec![1]).is_err());
        assert!(DyckPath::new(vec![1, 2]).is_err());
    }

    #[test]
    fn roundtrip_small() {
        for steps in [
            vec![],
            vec![1, -1],
            vec![1, 1, -1, -1],
            vec![1, -1, 1, -1],
            vec![1, 1, -1, 1, -1, -1, 1, -1],
        ] {
            let d = DyckPath::new(steps).unwrap();
            let t = PlaneTree::from_dyck(&d);
            assert_eq!(t.contour(), d);
        }
    }
}
