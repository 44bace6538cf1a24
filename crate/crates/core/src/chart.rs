//! Coordinate charts: named, ordered variable lists with per-variable flags.

use std::sync::Arc;

use crate::constant::ConstMode;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub vars: Vec<String>,
    /// variables that admit a formal square root
    pub root: Vec<bool>,
    /// formal nonzero constants: killed by d, never bound by maps
    pub constant: Vec<bool>,
    /// reality flags used by conjugation (default: all real)
    pub real: Vec<bool>,
    pub mode: Arc<ConstMode>,
}

impl Chart {
    pub fn new(name: &str, vars: &[&str], mode: &Arc<ConstMode>) -> Arc<Chart> {
        Arc::new(Chart {
            name: name.to_string(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            root: vec![false; vars.len()],
            constant: vec![false; vars.len()],
            real: vec![true; vars.len()],
            mode: mode.clone(),
        })
    }

    pub fn with_roots(name: &str, vars: &[&str], roots: &[&str], mode: &Arc<ConstMode>) -> Arc<Chart> {
        let mut c = Chart {
            name: name.to_string(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            root: vec![false; vars.len()],
            constant: vec![false; vars.len()],
            real: vec![true; vars.len()],
            mode: mode.clone(),
        };
        for r in roots {
            let i = c
                .vars
                .iter()
                .position(|v| v == r)
                .unwrap_or_else(|| panic!("root variable `{}` not in chart", r));
            c.root[i] = true;
        }
        Arc::new(c)
    }

    pub fn with_constants(
        name: &str,
        vars: &[&str],
        constants: &[&str],
        mode: &Arc<ConstMode>,
    ) -> Arc<Chart> {
        let mut c = Chart {
            name: name.to_string(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            root: vec![false; vars.len()],
            constant: vec![false; vars.len()],
            real: vec![true; vars.len()],
            mode: mode.clone(),
        };
        for r in constants {
            let i = c
                .vars
                .iter()
                .position(|v| v == r)
                .unwrap_or_else(|| panic!("constant `{}` not in chart", r));
            c.constant[i] = true;
        }
        Arc::new(c)
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, var: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    /// Non-constant variables: the directions differential operators see.
    pub fn geometric_vars(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vars.len()).filter(move |&i| !self.constant[i])
    }

    pub fn same(a: &Arc<Chart>, b: &Arc<Chart>) -> bool {
        Arc::ptr_eq(a, b) || (a.name == b.name && a.vars == b.vars)
    }

    pub fn expect_same(a: &Arc<Chart>, b: &Arc<Chart>) -> Result<()> {
        if Chart::same(a, b) {
            Ok(())
        } else {
            Err(Error::ChartMismatch(a.name.clone(), b.name.clone()))
        }
    }
}
