use super::dyck::{DyckPath, Step};

impl DyckPath {
    /// Sends (area, dinv) to (bounce, area).
    ///
    /// Segment k interleaves the rows of area k−1 (as E steps) with the rows of area k
    /// (as N steps), read bottom to top.
    pub fn zeta(&self) -> DyckPath {
        let area = self.area_sequence();
        let max = area.iter().copied().max().unwrap_or(0);
        let zeros = area.iter().filter(|&&a| a == 0).count();
        let mut steps: Vec<Step> = std::iter::repeat(Step::N).take(zeros).collect();
        for k in 1..=max + 1 {
            steps.extend(area.iter().filter_map(|&a| {
                if a + 1 == k {
                    Some(Step::E)
                } else if a == k {
                    Some(Step::N)
                } else {
                    None
                }
            }));
        }
        DyckPath::new(steps).expect("zeta image is a Dyck path")
    }

    pub fn zeta_inverse(&self) -> DyckPath {
        let n = self.size();
        if n == 0 {
            return self.clone();
        }
        let mut bounds = vec![0];
        bounds.extend(self.bounce_set());
        bounds.push(n);
        let steps = self.steps();
        let mut area: Vec<usize> = vec![0; bounds[1]];
        // Segment k holds E steps b_{k−1}+1..=b_k and N steps b_k+1..=b_{k+1}.
        let mut cursor = bounds[1];
        for k in 1..bounds.len() - 1 {
            let len = (bounds[k] - bounds[k - 1]) + (bounds[k + 1] - bounds[k]);
            let segment = &steps[cursor..cursor + len];
            cursor += len;
            let mut next = Vec::with_capacity(area.len() + bounds[k + 1] - bounds[k]);
            let mut pending = segment.iter().peekable();
            for &a in &area {
                next.push(a);
                if a == k - 1 {
                    pending.next();
                    while pending.peek() == Some(&&Step::N) {
                        pending.next();
                        next.push(k);
                    }
                }
            }
            area = next;
        }
        DyckPath::from_area_sequence(&area).expect("inverse zeta yields an area sequence")
    }
}
