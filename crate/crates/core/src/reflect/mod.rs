//! Doubling a graph along its sinks and the reflection identity for
//! nonintersecting paths.
//!
//! The graph is glued to its mirror image (all edges reversed, weights kept)
//! through unit-weight connectors between the sinks `v_i` and their copies
//! `v_i'`. The bar variant connects `v_i -> v_i'`, `v_i -> v_{i+1}'`,
//! `v_i' -> v_{i+1}'`, making the sink-to-copy path matrix upper triangular with
//! 2s above the diagonal; the tilde variant runs the last two families the
//! other way, giving the transpose.

use std::collections::HashSet;

use crate::dag::{enumerate_nonintersecting, is_compatible, signed_sum, EndpointSpec, WeightedDag};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::ring::Ring;

/// A graph with endpoint tuples whose ends are all sinks, listed in the
/// caller's cyclic boundary order (which is trusted, not checked).
#[derive(Clone, Debug)]
pub struct ReflectionInput<R> {
    g: WeightedDag<R>,
    spec: EndpointSpec,
}

impl<R: Ring> ReflectionInput<R> {
    pub fn new(g: WeightedDag<R>, spec: EndpointSpec) -> Result<Self> {
        spec.resolve(&g)?;
        for v in &spec.ends {
            if g.out_degree(g.vertex(v)?) > 0 {
                return Err(Error::NotSink(v.clone()));
            }
        }
        Ok(ReflectionInput { g, spec })
    }

    pub fn graph(&self) -> &WeightedDag<R> {
        &self.g
    }

    pub fn spec(&self) -> &EndpointSpec {
        &self.spec
    }

    pub fn sink_order(&self) -> &[String] {
        &self.spec.ends
    }

    /// Suffix of `'` characters, as short as possible, that never turns one
    /// original id into another.
    fn prime_suffix(&self) -> String {
        let ids: HashSet<&str> = self.g.ids().iter().map(String::as_str).collect();
        let mut suffix = String::from("'");
        while self.g.ids().iter().any(|id| ids.contains(format!("{id}{suffix}").as_str())) {
            suffix.push('\'');
        }
        suffix
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Bar,
    Tilde,
}

/// The doubled graph together with the endpoint tuples `(u, u')`.
#[derive(Clone, Debug)]
pub struct Reflected<R> {
    pub dag: WeightedDag<R>,
    pub spec: EndpointSpec,
    pub suffix: String,
}

impl<R: Ring> Reflected<R> {
    pub fn primed(&self, id: &str) -> String {
        format!("{id}{}", self.suffix)
    }
}

pub fn build_gsym<R: Ring>(input: &ReflectionInput<R>, variant: Variant) -> Result<Reflected<R>> {
    let suffix = input.prime_suffix();
    let prime = |id: &str| format!("{id}{suffix}");
    let g = &input.g;
    let ids = g.ids().iter().cloned().chain(g.ids().iter().map(|id| prime(id)));
    let mut edges = g.edge_triples();
    for (a, b, w) in g.edge_triples() {
        edges.push((prime(&b), prime(&a), w));
    }
    let v = &input.spec.ends;
    for (i, vi) in v.iter().enumerate() {
        edges.push((vi.clone(), prime(vi), R::one()));
        if let Some(next) = v.get(i + 1) {
            match variant {
                Variant::Bar => {
                    edges.push((vi.clone(), prime(next), R::one()));
                    edges.push((prime(vi), prime(next), R::one()));
                }
                Variant::Tilde => {
                    edges.push((next.clone(), prime(vi), R::one()));
                    edges.push((prime(next), prime(vi), R::one()));
                }
            }
        }
    }
    let dag = WeightedDag::new(ids, edges)?;
    let spec = EndpointSpec::new(input.spec.starts.iter().cloned(), input.spec.starts.iter().map(|u| prime(u)))?;
    Ok(Reflected { dag, spec, suffix })
}

pub fn build_gsym_bar<R: Ring>(input: &ReflectionInput<R>) -> Result<Reflected<R>> {
    build_gsym(input, Variant::Bar)
}

pub fn build_gsym_tilde<R: Ring>(input: &ReflectionInput<R>) -> Result<Reflected<R>> {
    build_gsym(input, Variant::Tilde)
}

/// Both sides of the reflection identity for one input.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionReport<R> {
    /// Square of the signed sum on the original graph.
    pub squared: R,
    pub bar: R,
    pub tilde: R,
    pub compatible: bool,
    /// Identity-permutation weights `(squared, bar, tilde)`, filled in only
    /// for compatible endpoint tuples.
    pub unsigned: Option<(R, R, R)>,
}

impl<R: Ring> ReflectionReport<R> {
    pub fn passes(&self) -> bool {
        let signed = self.squared == self.bar && self.squared == self.tilde;
        let unsigned = self.unsigned.as_ref().is_none_or(|(s, b, t)| s == b && s == t);
        signed && unsigned
    }
}

pub fn verify_reflection_principle<R: Ring>(
    input: &ReflectionInput<R>,
    exec: Execution,
) -> Result<ReflectionReport<R>> {
    let bar = build_gsym_bar(input)?;
    let tilde = build_gsym_tilde(input)?;
    let base = signed_sum(&input.g, &input.spec, exec)?;
    let compatible = is_compatible(&input.g, &input.spec)?;
    let unsigned = if compatible {
        let id: Vec<usize> = (0..input.spec.m()).collect();
        let w = enumerate_nonintersecting(&input.g, &input.spec, &id)?;
        Some((
            w.clone() * w,
            enumerate_nonintersecting(&bar.dag, &bar.spec, &id)?,
            enumerate_nonintersecting(&tilde.dag, &tilde.spec, &id)?,
        ))
    } else {
        None
    };
    Ok(ReflectionReport {
        squared: base.clone() * base,
        bar: signed_sum(&bar.dag, &bar.spec, exec)?,
        tilde: signed_sum(&tilde.dag, &tilde.spec, exec)?,
        compatible,
        unsigned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::lattice::{random_boundary_instance, GridLayout};
    use crate::dag::path_gf;
    use crate::ring::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn fan(n: usize) -> ReflectionInput<Rational> {
        let ends: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let ids = std::iter::once("u".to_string()).chain(ends.iter().cloned());
        let edges = ends.iter().map(|v| ("u".to_string(), v.clone(), r(1))).collect();
        let g = WeightedDag::new(ids, edges).unwrap();
        ReflectionInput::new(g, EndpointSpec::new(vec!["u".to_string()], ends).unwrap()).unwrap()
    }

    fn connectors(refl: &Reflected<Rational>, input: &ReflectionInput<Rational>) -> Vec<(String, String)> {
        let original = input.graph().edge_count() * 2;
        let mut out: Vec<_> =
            refl.dag.edge_triples()[original..].iter().map(|(a, b, _)| (a.clone(), b.clone())).collect();
        out.sort();
        out
    }

    #[test]
    fn connector_counts() {
        let one = fan(1);
        assert_eq!(connectors(&build_gsym_bar(&one).unwrap(), &one), vec![("v1".into(), "v1'".into())]);
        let two = fan(2);
        let pairs = |xs: &[(&str, &str)]| {
            let mut v: Vec<(String, String)> = xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
            v.sort();
            v
        };
        assert_eq!(
            connectors(&build_gsym_bar(&two).unwrap(), &two),
            pairs(&[("v1", "v1'"), ("v2", "v2'"), ("v1", "v2'"), ("v1'", "v2'")])
        );
        assert_eq!(
            connectors(&build_gsym_tilde(&two).unwrap(), &two),
            pairs(&[("v1", "v1'"), ("v2", "v2'"), ("v2", "v1'"), ("v2'", "v1'")])
        );
        let five = fan(5);
        assert_eq!(connectors(&build_gsym_bar(&five).unwrap(), &five).len(), 3 * 5 - 2);
    }

    #[test]
    fn sink_to_copy_matrices() {
        let input = fan(4);
        let bar = build_gsym_bar(&input).unwrap();
        let tilde = build_gsym_tilde(&input).unwrap();
        for i in 1..=4 {
            for j in 1..=4 {
                let (vi, vj) = (format!("v{i}"), format!("v{j}'"));
                let expect = match i.cmp(&j) {
                    std::cmp::Ordering::Less => 2,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => 0,
                };
                assert_eq!(path_gf(&bar.dag, &vi, &vj).unwrap(), r(expect));
                let swapped = match i.cmp(&j) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => 2,
                };
                assert_eq!(path_gf(&tilde.dag, &vi, &vj).unwrap(), r(swapped));
            }
        }
    }

    #[test]
    fn single_edge() {
        let g = WeightedDag::new(["u1", "v1"], vec![("u1".into(), "v1".into(), r(5))]).unwrap();
        let input = ReflectionInput::new(g, EndpointSpec::new(["u1"], ["v1"]).unwrap()).unwrap();
        let report = verify_reflection_principle(&input, Execution::Sequential).unwrap();
        assert_eq!(report.squared, r(25));
        assert_eq!(report.bar, r(25));
        assert_eq!(report.tilde, r(25));
        assert_eq!(report.unsigned, Some((r(25), r(25), r(25))));
        assert!(report.passes());
    }

    #[test]
    fn non_sink_is_rejected_and_primes_avoid_collisions() {
        let g = WeightedDag::new(["u", "v", "w"], vec![("u".into(), "v".into(), r(1)), ("v".into(), "w".into(), r(1))])
            .unwrap();
        let err = ReflectionInput::new(g, EndpointSpec::new(["u"], ["v"]).unwrap()).unwrap_err();
        assert_eq!(err, Error::NotSink("v".into()));

        let g =
            WeightedDag::new(["u", "u'", "v"], vec![("u".into(), "v".into(), r(1)), ("u'".into(), "v".into(), r(1))])
                .unwrap();
        let input = ReflectionInput::new(g, EndpointSpec::new(["u"], ["v"]).unwrap()).unwrap();
        let refl = build_gsym_bar(&input).unwrap();
        assert_eq!(refl.suffix, "''");
        assert_eq!(refl.spec.ends, vec!["u''".to_string()]);
    }

    #[test]
    fn mirror_keeps_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let layout = GridLayout { width: 3, height: 3, m: 2, n: 3, reversed: false, sinks: true };
        let inst = random_boundary_instance(&mut rng, layout).unwrap();
        let input = ReflectionInput::new(inst.dag, inst.spec).unwrap();
        let refl = build_gsym_bar(&input).unwrap();
        let k = input.graph().edge_count();
        let mut a: Vec<String> = refl.dag.edges()[..k].iter().map(|e| e.weight.to_string()).collect();
        let mut b: Vec<String> = refl.dag.edges()[k..2 * k].iter().map(|e| e.weight.to_string()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn grid_instances_both_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (m, n, reversed) in [(2, 3, false), (1, 2, false), (3, 3, false), (2, 2, true), (3, 4, true)] {
            let layout = GridLayout { width: 3, height: 3, m, n, reversed, sinks: true };
            let inst = random_boundary_instance(&mut rng, layout).unwrap();
            let input = ReflectionInput::new(inst.dag, inst.spec).unwrap();
            let report = verify_reflection_principle(&input, Execution::Parallel).unwrap();
            assert!(report.passes(), "{m} {n} {reversed}: {report:?}");
        }
    }
}
