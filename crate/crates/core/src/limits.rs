//! Resource bounds shared by every enumerator.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Environment variable capping the size of generated posets and diagrams.
pub const MAX_OBJECTS_ENV: &str = "OPERAD_WB_MAX_OBJECTS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
    pub max_tips: usize,
    pub max_objects: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 4,
            max_tips: 8,
            max_objects: 1_000_000,
        }
    }
}

static GLOBAL: OnceLock<Limits> = OnceLock::new();

impl Limits {
    /// Defaults, with `max_objects` overridden by the environment when set.
    pub fn from_env() -> Limits {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(MAX_OBJECTS_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
        {
            limits.max_objects = v;
        }
        limits
    }

    /// The process-wide limits.
    pub fn global() -> Limits {
        *GLOBAL.get_or_init(Limits::from_env)
    }

    /// Installs process-wide limits. Returns false if they were already fixed.
    pub fn install(limits: Limits) -> bool {
        GLOBAL.set(limits).is_ok()
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Precondition("degree must be at least 1".into()));
        }
        if n > self.max_degree {
            return Err(Error::ResourceLimit {
                what: "degree",
                requested: n,
                limit: self.max_degree,
            });
        }
        Ok(())
    }

    pub fn check_tips(&self, k: usize) -> Result<()> {
        if k > self.max_tips {
            return Err(Error::ResourceLimit {
                what: "tips",
                requested: k,
                limit: self.max_tips,
            });
        }
        Ok(())
    }

    pub fn check_objects(&self, what: &'static str, count: usize) -> Result<()> {
        if count > self.max_objects {
            return Err(Error::ResourceLimit {
                what,
                requested: count,
                limit: self.max_objects,
            });
        }
        Ok(())
    }
}
