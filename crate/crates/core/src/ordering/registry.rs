use std::collections::BTreeMap;

use super::{Kbo, Lpo, NonRecursiveKbo, Precedence, Rpo, TermOrdering};
use crate::error::{Error, Result};

pub type OrderingFactory = fn(Precedence) -> Result<Box<dyn TermOrdering>>;

/// Orderings by CLI name.
#[derive(Clone)]
pub struct OrderingRegistry {
    factories: BTreeMap<&'static str, OrderingFactory>,
}

impl OrderingRegistry {
    pub fn empty() -> Self {
        OrderingRegistry {
            factories: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register("kbo", |p| Ok(Box::new(Kbo::new(p)?)));
        reg.register("nrkbo", |p| Ok(Box::new(NonRecursiveKbo::new(p)?)));
        reg.register("lpo", |p| Ok(Box::new(Lpo::new(p)?)));
        reg.register("rpo", |p| Ok(Box::new(Rpo::new(p)?)));
        reg
    }

    pub fn register(&mut self, name: &'static str, factory: OrderingFactory) {
        self.factories.insert(name, factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.factories.keys().copied()
    }

    pub fn create(&self, name: &str, precedence: Precedence) -> Result<Box<dyn TermOrdering>> {
        let factory = self
            .factories
            .get(name)
            .ok_or_else(|| Error::UnknownOrdering(name.to_string()))?;
        factory(precedence)
    }
}

impl Default for OrderingRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names() {
        let reg = OrderingRegistry::builtin();
        assert_eq!(reg.names().collect::<Vec<_>>(), ["kbo", "lpo", "nrkbo", "rpo"]);
        for name in reg.names() {
            let ord = reg.create(name, Precedence::default_for([])).unwrap();
            assert_eq!(ord.name(), name);
        }
        assert!(reg.create("acrpo", Precedence::default_for([])).is_err());
    }
}
