use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rosetta::lambda::Term;

/// A random lambda term of `size` nodes whose free variables come from `scope`;
/// with an empty scope the result is closed.
pub fn random_term(
    rng: &mut ChaCha8Rng,
    size: usize,
    scope: &mut Vec<String>,
    fresh: &mut usize,
) -> Term {
    if size <= 1 || (size <= 3 && rng.gen_bool(0.5)) {
        if scope.is_empty() {
            let x = format!("v{}", *fresh);
            *fresh += 1;
            return Term::lam(&x, Term::var(&x));
        }
        return Term::var(&scope[rng.gen_range(0..scope.len())]);
    }
    if scope.is_empty() || size < 3 || rng.gen_bool(0.45) {
        let x = format!("v{}", *fresh);
        *fresh += 1;
        scope.push(x.clone());
        let b = random_term(rng, size - 1, scope, fresh);
        scope.pop();
        Term::lam(&x, b)
    } else {
        let left = rng.gen_range(1..size - 1);
        let f = random_term(rng, left, scope, fresh);
        let a = random_term(rng, size - 1 - left, scope, fresh);
        Term::app(f, a)
    }
}

/// A closed term of at most `max` nodes drawn from `seed`.
pub fn closed_term(seed: u64, max: usize) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = rng.gen_range(1..=max);
    random_term(&mut rng, size, &mut Vec::new(), &mut 0)
}
