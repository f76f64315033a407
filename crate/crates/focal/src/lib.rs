//! Command-line front end, s-expression formats and instance generators
//! for `focal-core`.

pub mod cli;
pub mod gen;
pub mod sexp;

/// Stack size for threads that handle deeply nested input.
pub const BIG_STACK: usize = 512 << 20;

/// Run `f` on a thread with a [`BIG_STACK`] stack and return its result.
pub fn run_with_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new()
        .stack_size(BIG_STACK)
        .spawn(f)
        .expect("spawn worker thread")
        .join()
        .unwrap_or_else(|e| std::panic::resume_unwind(e))
}
