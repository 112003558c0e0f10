use std::fmt;

use crate::kset::KSet;
use crate::oracle::Objective;

/// An objective given by a closure. Useful for small hand-built functions in
/// tests and for deliberately broken counterexamples.
pub struct FnObjective {
    n: usize,
    k: usize,
    f: Box<dyn Fn(&KSet) -> f64 + Send + Sync>,
}

impl FnObjective {
    pub fn new(n: usize, k: usize, f: impl Fn(&KSet) -> f64 + Send + Sync + 'static) -> Self {
        FnObjective {
            n,
            k,
            f: Box::new(f),
        }
    }

    /// `f(x) = |supp(x)|`, i.e. `Σ_i |X_i|`.
    pub fn modular(n: usize, k: usize) -> Self {
        FnObjective::new(n, k, |x| x.support_size() as f64)
    }

    /// `f(x) = |supp(x)|²`: monotone but supermodular, so not k-submodular.
    pub fn support_squared(n: usize, k: usize) -> Self {
        FnObjective::new(n, k, |x| (x.support_size() * x.support_size()) as f64)
    }
}

impl fmt::Debug for FnObjective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnObjective")
            .field("n", &self.n)
            .field("k", &self.k)
            .finish_non_exhaustive()
    }
}

impl Objective for FnObjective {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn positions(&self) -> usize {
        self.k
    }

    fn value(&self, x: &KSet) -> f64 {
        (self.f)(x)
    }
}
