/// Index of the distinguished variable `t`.
pub const T_VAR: usize = 0;

/// Names for the variables of a problem instance.
///
/// Index 0 is the distinguished variable `t`; indices `1..=m` are the
/// parameters `x1..xm`. Further indices are auxiliary (the algebraic
/// indeterminate `Y`, extension generators, duplicated parameters) and
/// are allocated on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarUniverse {
    names: Vec<String>,
}

impl VarUniverse {
    pub fn new<S: AsRef<str>>(params: &[S]) -> Self {
        let mut names = vec!["t".to_string()];
        for p in params {
            assert!(p.as_ref() != "t", "t is always the distinguished variable");
            names.push(p.as_ref().to_string());
        }
        VarUniverse { names }
    }

    /// Universe with parameters x (index 1) only; handy in tests.
    pub fn tx() -> Self {
        VarUniverse::new(&["x"])
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn params(&self) -> std::ops::Range<usize> {
        1..self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, idx: usize) -> String {
        match self.names.get(idx) {
            Some(n) => n.clone(),
            None => format!("v{}", idx),
        }
    }

    /// Register an auxiliary variable and return its index.
    pub fn push_aux(&mut self, name: &str) -> usize {
        self.names.push(name.to_string());
        self.names.len() - 1
    }
}

impl Default for VarUniverse {
    fn default() -> Self {
        VarUniverse::tx()
    }
}
