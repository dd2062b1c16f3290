use std::cell::Cell;

use crate::error::{Error, Result};

/// Default bound on the size of any single enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 100_000;

thread_local! {
    static CAP: Cell<usize> = const { Cell::new(DEFAULT_ENUMERATION_CAP) };
}

/// The enumeration cap in force on the current thread.
pub fn enumeration_cap() -> usize {
    CAP.with(Cell::get)
}

/// Runs `f` with the enumeration cap set to `cap`, restoring the previous
/// value afterwards (also on panic).
pub fn with_enumeration_cap<R>(cap: usize, f: impl FnOnce() -> R) -> R {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            CAP.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(CAP.with(|c| c.replace(cap)));
    f()
}

pub(crate) fn ensure_within_cap(needed: u128) -> Result<()> {
    let cap = enumeration_cap();
    if needed > cap as u128 {
        Err(Error::CapExceeded { needed, cap })
    } else {
        Ok(())
    }
}

/// `base^exp`, saturating.
pub(crate) fn power(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc == 0 {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scoped_cap_restores() {
        assert_eq!(enumeration_cap(), DEFAULT_ENUMERATION_CAP);
        with_enumeration_cap(7, || {
            assert_eq!(enumeration_cap(), 7);
            assert!(ensure_within_cap(8).is_err());
            assert!(ensure_within_cap(7).is_ok());
        });
        assert_eq!(enumeration_cap(), DEFAULT_ENUMERATION_CAP);
    }

    #[test]
    fn power_edge_cases() {
        assert_eq!(power(0, 0), 1);
        assert_eq!(power(0, 3), 0);
        assert_eq!(power(3, 2), 9);
        assert_eq!(power(usize::MAX, 4), u128::MAX);
    }
}
