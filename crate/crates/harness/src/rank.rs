use serde::{Deserialize, Serialize};

/// Fractional ranks in `[0, 1]`: `(#{w < v} + (#{w = v} − 1) / 2) / (M − 1)`. Ties
/// share a rank; with no ties the minimum maps to 0 and the maximum to 1.
pub fn rank_scores(values: &[f64]) -> Vec<f64> {
    let m = values.len();
    if m < 2 {
        return vec![0.5; m];
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; m];
    let mut start = 0;
    while start < m {
        let v = values[order[start]];
        let end = start + order[start..].iter().take_while(|&&k| values[k] == v).count();
        let r = (start as f64 + (end - start - 1) as f64 / 2.0) / (m - 1) as f64;
        for &k in &order[start..end] {
            ranks[k] = r;
        }
        start = end;
    }
    ranks
}

/// The statistics ranked per batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    R,
    UX,
    UY,
    S,
    Mi,
}

impl Statistic {
    pub const ALL: [Statistic; 5] = [Statistic::R, Statistic::UX, Statistic::UY, Statistic::S, Statistic::Mi];

    pub fn label(self) -> &'static str {
        match self {
            Statistic::R => "R",
            Statistic::UX => "U_X",
            Statistic::UY => "U_Y",
            Statistic::S => "S",
            Statistic::Mi => "MI",
        }
    }
}

/// Per-pair ranks of one batch, `ranks[pair][stat]` in [`Statistic::ALL`] order, for a
/// single PID kind (the `MI` column is kind-independent).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankTable {
    pub ranks: Vec<[f64; 5]>,
}

impl RankTable {
    /// Ranks each column of `values` (rows are pairs) independently.
    pub fn from_values(values: &[[f64; 5]]) -> Self {
        let mut ranks = vec![[0.0; 5]; values.len()];
        for s in 0..5 {
            let col: Vec<f64> = values.iter().map(|row| row[s]).collect();
            for (row, r) in ranks.iter_mut().zip(rank_scores(&col)) {
                row[s] = r;
            }
        }
        RankTable { ranks }
    }

    pub fn get(&self, pair: usize, stat: Statistic) -> f64 {
        let idx = Statistic::ALL.iter().position(|&s| s == stat).expect("known statistic");
        self.ranks[pair][idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(rank_scores(&[1.0, 2.0, 3.0]), vec![0.0, 0.5, 1.0]);
        assert_eq!(rank_scores(&[5.0, 5.0]), vec![0.5, 0.5]);
        assert_eq!(rank_scores(&[3.0, 1.0, 2.0, 2.0]), vec![1.0, 0.0, 0.5, 0.5]);
    }

    #[test]
    fn table_ranks_columns_independently() {
        let t = RankTable::from_values(&[[1.0, 3.0, 0.0, 0.0, 0.0], [2.0, 1.0, 0.0, 0.0, 1.0]]);
        assert_eq!(t.get(0, Statistic::R), 0.0);
        assert_eq!(t.get(0, Statistic::UX), 1.0);
        assert_eq!(t.get(1, Statistic::UY), 0.5);
        assert_eq!(t.get(1, Statistic::Mi), 1.0);
    }
}
