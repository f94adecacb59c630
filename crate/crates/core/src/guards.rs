//! Centralized size guards. Overridable through the environment variable
//! HECKE_FORGE_UNGUARDED=1 together with the CLI --guard-override flag.

#[derive(Clone, Copy, Debug)]
pub struct Guards {
    /// rank bound for Weyl group enumeration
    pub max_ns: usize,
    /// matrix size bound for the finite-group oracle
    pub oracle_max_n: usize,
    /// field size bound for the finite-group oracle
    pub oracle_max_q: u64,
    /// order bound for finite matrix group closures
    pub max_group_order: usize,
    /// p-adic precision bound
    pub max_precision: u32,
    /// matrix size bound in the splitting module
    pub max_matrix_n: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_ns: 8,
            oracle_max_n: 4,
            oracle_max_q: 5,
            max_group_order: 20_000,
            max_precision: 8,
            max_matrix_n: 12,
        }
    }
}

impl Guards {
    pub fn unguarded() -> Self {
        Guards {
            max_ns: usize::MAX,
            oracle_max_n: usize::MAX,
            oracle_max_q: u64::MAX,
            max_group_order: usize::MAX,
            max_precision: u32::MAX,
            max_matrix_n: usize::MAX,
        }
    }

    pub fn from_env() -> Self {
        if std::env::var("HECKE_FORGE_UNGUARDED").map(|v| v == "1").unwrap_or(false) {
            Guards::unguarded()
        } else {
            Guards::default()
        }
    }
}
