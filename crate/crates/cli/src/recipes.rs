//! Named experiments, one per results figure, sized to run on a desk.

use crate::config::{ExperimentConfig, Kind, Method};

pub struct Recipe {
    pub name: &'static str,
    pub description: &'static str,
    build: fn() -> ExperimentConfig,
}

impl Recipe {
    pub fn config(&self) -> ExperimentConfig {
        ExperimentConfig {
            name: self.name.into(),
            ..(self.build)()
        }
    }
}

const OPTIMIZERS: [Method; 4] = [
    Method::Optimize,
    Method::Exhaustive,
    Method::Cpp,
    Method::ImprovedCpp,
];

pub const RECIPES: &[Recipe] = &[
    Recipe {
        name: "fig-cap-vs-n-k2",
        description: "capacity vs N, K=2 evenly spaced; exhaustive where K^N fits its cap",
        build: || ExperimentConfig {
            methods: OPTIMIZERS.to_vec(),
            n: vec![4, 8, 16, 32, 64, 128],
            k: vec![2],
            ..Default::default()
        },
    },
    Recipe {
        name: "fig-cap-vs-n-k4",
        description: "capacity vs N, K=4 evenly spaced; exhaustive where K^N fits its cap",
        build: || ExperimentConfig {
            methods: OPTIMIZERS.to_vec(),
            n: vec![4, 8, 16, 32, 64, 128],
            k: vec![4],
            ..Default::default()
        },
    },
    Recipe {
        name: "fig-cap-vs-h0",
        description: "capacity vs |h0| (-140..-110 dB), K=4, N=64",
        build: || ExperimentConfig {
            methods: vec![Method::Optimize, Method::Cpp, Method::ImprovedCpp],
            h0_db: vec![-140.0, -135.0, -130.0, -125.0, -120.0, -115.0, -110.0],
            ..Default::default()
        },
    },
    Recipe {
        name: "fig-cap-vs-n-select",
        description: "capacity vs N of the sets picked by IMB, IMB+SSC, MCSB and even spacing (M=8, K=2, R=200)",
        build: || ExperimentConfig {
            kind: Kind::Selection,
            methods: vec![Method::Imb, Method::ImbSsc, Method::Mcsb, Method::EvenlySpaced],
            n: vec![16, 32, 64, 128],
            k: vec![2],
            m: vec![8],
            replicates: 200,
            ..Default::default()
        },
    },
    Recipe {
        name: "fig-cap-vs-k",
        description: "capacity vs K of IMB and evenly spaced sets (M=20, N=64)",
        build: || ExperimentConfig {
            kind: Kind::Selection,
            methods: vec![Method::Imb, Method::EvenlySpaced],
            k: (2..=8).collect(),
            ..Default::default()
        },
    },
    Recipe {
        name: "fig-cap-vs-beta-min",
        description: "capacity vs beta_min of IMB and evenly spaced sets (K=4, M=20, N=64)",
        build: || ExperimentConfig {
            kind: Kind::Selection,
            methods: vec![Method::Imb, Method::EvenlySpaced],
            beta_min: vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
            ..Default::default()
        },
    },
    Recipe {
        name: "fig-cap-vs-kappa",
        description: "capacity vs kappa of IMB and evenly spaced sets (K=4, M=20, N=64)",
        build: || ExperimentConfig {
            kind: Kind::Selection,
            methods: vec![Method::Imb, Method::EvenlySpaced],
            kappa: vec![0.0, 0.5, 1.0, 1.6, 2.0, 3.0],
            ..Default::default()
        },
    },
    Recipe {
        name: "fig-time-vs-m",
        description: "IMB vs IMB+SSC search time vs M (K=4, M=10..20)",
        build: || ExperimentConfig {
            kind: Kind::SearchCost,
            methods: vec![Method::Imb, Method::ImbSsc],
            m: (10..=20).collect(),
            replicates: 5,
            ..Default::default()
        },
    },
    Recipe {
        name: "fig-ssc-count",
        description: "options examined by IMB vs IMB+SSC vs M (K=4, M=10..20)",
        build: || ExperimentConfig {
            kind: Kind::SearchCost,
            methods: vec![Method::Imb, Method::ImbSsc],
            m: (10..=20).collect(),
            replicates: 1,
            ..Default::default()
        },
    },
];

pub fn find(name: &str) -> Option<&'static Recipe> {
    RECIPES.iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_recipe_validates() {
        for r in RECIPES {
            let cfg = r.config();
            assert_eq!(cfg.name, r.name);
            cfg.validate().unwrap_or_else(|e| panic!("{}: {e}", r.name));
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = RECIPES.iter().map(|r| r.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), RECIPES.len());
        assert!(find("fig-ssc-count").is_some());
        assert!(find("nope").is_none());
    }
}
