//! Worked examples, regenerated through the full pipeline and compared with
//! their published values by canonical rendering.

use num_bigint::BigInt;
use tangent_forge::construction::assignment;
use tangent_forge::{
    derive, instantiate, normalize, rearrange_equal_sums, specialize, verify_numeric, Assignment, Coefficient,
    NumericTuple, Polynomial, Power, ProblemSpec, VarId,
};

use crate::args::ExampleId;
use crate::output::{power_line, ComparisonPayload, ReproductionPayload};
use crate::CliError;

/// Turns the compact published notation (`64m-36n`, `12p^2-5p-25`) into the
/// parser's syntax: explicit `*` and indexed variables, with a bare `p`
/// meaning `p1`.
pub fn from_published(src: &str) -> Result<Polynomial, CliError> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let prev = i.checked_sub(1).map(|j| chars[j]);
        if c.is_ascii_alphabetic() && prev.is_some_and(|p| p.is_ascii_digit() || p.is_ascii_alphabetic()) {
            out.push('*');
        }
        out.push(c);
        if c == 'p' && !chars.get(i + 1).is_some_and(|n| n.is_ascii_digit()) {
            out.push('1');
        }
    }
    out.parse().map_err(|e| CliError::Internal(format!("bad expected value `{src}`: {e}")))
}

struct Comparer {
    comparisons: Vec<ComparisonPayload>,
}

impl Comparer {
    fn poly(&mut self, label: String, expected: &str, actual: &Polynomial) -> Result<(), CliError> {
        let want = from_published(expected)?;
        self.comparisons.push(ComparisonPayload {
            label,
            expected: want.to_string(),
            actual: actual.to_string(),
            ok: &want == actual,
        });
        Ok(())
    }

    fn polys(&mut self, prefix: &str, expected: &[&str], actual: &[Polynomial]) -> Result<(), CliError> {
        if expected.len() != actual.len() {
            self.text(format!("{prefix} length"), &expected.len().to_string(), &actual.len().to_string());
            return Ok(());
        }
        for (i, (e, a)) in expected.iter().zip(actual).enumerate() {
            self.poly(format!("{prefix}{}", i + 1), e, a)?;
        }
        Ok(())
    }

    fn text(&mut self, label: String, expected: &str, actual: &str) {
        self.comparisons.push(ComparisonPayload {
            label,
            expected: expected.to_string(),
            actual: actual.to_string(),
            ok: expected == actual,
        });
    }

    fn finish(self, example: ExampleId, lines: Vec<String>) -> ReproductionPayload {
        let ok = self.comparisons.iter().all(|c| c.ok);
        ReproductionPayload { example: example.name().to_string(), lines, comparisons: self.comparisons, ok }
    }
}

fn example_three_spec() -> Result<ProblemSpec, CliError> {
    Ok(ProblemSpec::new(5, 5, Coefficient::Fixed(1), Coefficient::Symbolic)?)
}

fn example_three_values() -> Assignment {
    assignment([
        (VarId::p(1), 5),
        (VarId::p(2), 6),
        (VarId::q(1), 7),
        (VarId::q(2), 8),
        (VarId::r(1), 1),
        (VarId::r(2), 2),
        (VarId::s(1), 3),
        (VarId::s(2), 4),
    ])
}

fn tuple_line(xs: &[Polynomial], ys: &[Polynomial]) -> String {
    let r = |v: &[Polynomial]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    format!("({} | {})", r(xs), r(ys))
}

fn substituted(
    t: usize,
    values: Assignment,
    expected_x: &[&str],
    expected_y: &[&str],
    example: ExampleId,
) -> Result<ReproductionPayload, CliError> {
    let sol = derive(&ProblemSpec::symbolic(t, t)?)?;
    let (xs, ys) = sol.substitute_values(&values);
    let mut cmp = Comparer { comparisons: Vec::new() };
    cmp.polys("x'", expected_x, &xs)?;
    cmp.polys("y'", expected_y, &ys)?;
    let mut lines = vec![format!("A = {}", sol.a()), format!("B = {}", sol.b())];
    lines.push(tuple_line(&xs, &ys));
    Ok(cmp.finish(example, lines))
}

fn ex1() -> Result<ReproductionPayload, CliError> {
    substituted(
        3,
        assignment([(VarId::p(1), 4), (VarId::q(1), 1), (VarId::r(1), 2), (VarId::s(1), 3)]),
        &["30n", "64m-36n", "-64m+6n"],
        &["80m", "16m-9n", "-96m+9n"],
        ExampleId::Ex1,
    )
}

fn ex2() -> Result<ReproductionPayload, CliError> {
    substituted(
        4,
        assignment([
            (VarId::p(1), 2),
            (VarId::p(2), 5),
            (VarId::q(1), 1),
            (VarId::q(2), 3),
            (VarId::r(1), 6),
            (VarId::r(2), 7),
            (VarId::s(1), 4),
            (VarId::s(2), 9),
        ]),
        &["-1456m+104n", "-2093m+1248n", "2093m-1924n", "1456m+572n"],
        &["-1001m+156n", "-2548m+1196n", "1365m-1196n", "2184m-156n"],
        ExampleId::Ex2,
    )
}

fn ex3() -> Result<ReproductionPayload, CliError> {
    let sol = derive(&example_three_spec()?)?;
    let mut cmp = Comparer { comparisons: Vec::new() };
    cmp.poly("A".into(), "p1^2r1+p1^2r2-p2^2r1-nq1^2s1-nq1^2s2+nq2^2s1", sol.a())?;
    cmp.poly("B".into(), "-p1r1^2+p1r2^2-p2r1^2+nq1s1^2-nq1s2^2+nq2s1^2", sol.b())?;
    let (xs, ys) = sol.substitute_values(&example_three_values());
    cmp.polys("x'", &["84-36n", "33-417n", "15+289n", "-54-138n", "-78+302n"], &xs)?;
    cmp.polys("y'", &["180-292n", "93-765n", "-45+637n", "-72-184n", "-156+604n"], &ys)?;
    let lines = vec![format!("A = {}", sol.a()), format!("B = {}", sol.b()), tuple_line(&xs, &ys)];
    Ok(cmp.finish(ExampleId::Ex3, lines))
}

fn ex3n0() -> Result<ReproductionPayload, CliError> {
    let sol = derive(&example_three_spec()?)?;
    let mut values = example_three_values();
    values.insert(VarId::N, BigInt::from(0));
    let raw = instantiate(&sol, &values)?;
    let norm = normalize(&raw)?;
    let sums = rearrange_equal_sums(norm.tuple())?;
    let lhs: Vec<String> = sums.lhs.iter().map(ToString::to_string).collect();
    let rhs: Vec<String> = sums.rhs.iter().map(ToString::to_string).collect();
    let cubes = format!("{} = {}", power_line(&lhs, 3), power_line(&rhs, 3));
    let linear = format!("{} = {}", power_line(&lhs, 1), power_line(&rhs, 1));

    let as_tuple = NumericTuple::new(1, 1, sums.lhs.clone(), sums.rhs.clone());
    let k1 = verify_numeric(&as_tuple, Power::Linear);
    let k3 = verify_numeric(&as_tuple, Power::Cubic);

    let mut cmp = Comparer { comparisons: Vec::new() };
    cmp.text("common factor".into(), "3", &norm.primitive_gcd().to_string());
    cmp.text("cubes".into(), "5^3+11^3+28^3 = 18^3+26^3", &cubes);
    cmp.text("sums".into(), "5+11+28 = 18+26", &linear);
    cmp.text("sum value".into(), "44 = 44", &format!("{} = {}", k1.lhs, k1.rhs));
    cmp.text("cube value".into(), "23408 = 23408", &format!("{} = {}", k3.lhs, k3.rhs));

    let raw_line = {
        let t = raw.tuple();
        let r = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        format!("n = 0: ({} | {}) = {} * ({})", r(&t.xs), r(&t.ys), norm.primitive_gcd(), r(&norm.tuple().xs))
    };
    Ok(cmp.finish(ExampleId::Ex3n0, vec![raw_line, cubes, linear]))
}

fn remark() -> Result<ReproductionPayload, CliError> {
    let sol = derive(&example_three_spec()?)?;
    let mut fixing = example_three_values();
    fixing.remove(&VarId::p(1));
    fixing.extend([
        (VarId::N, BigInt::from(0)),
        (VarId::r(1), BigInt::from(1)),
        (VarId::r(2), BigInt::from(3)),
        (VarId::p(2), BigInt::from(5)),
    ]);
    let family = specialize(&sol, &fixing, VarId::p(1))?;
    let sums = family.equal_sums()?;
    let mut cmp = Comparer { comparisons: Vec::new() };
    cmp.polys("lhs", &["12p^2-5p-25", "4p^2+5p-75", "-4p^2+40p"], &sums.lhs)?;
    cmp.polys("rhs", &["40p-25", "12p^2-75"], &sums.rhs)?;
    for k in [1, 3] {
        cmp.text(format!("k={k} residual"), "0", &sums.residual(k).to_string());
    }
    let lines = vec![
        format!("fixed: {}", fixing.iter().map(|(v, x)| format!("{v}={x}")).collect::<Vec<_>>().join(",")),
        tuple_line(&sums.lhs, &sums.rhs),
    ];
    Ok(cmp.finish(ExampleId::Remark, lines))
}

pub fn reproduce(example: ExampleId) -> Result<ReproductionPayload, CliError> {
    match example {
        ExampleId::Ex1 => ex1(),
        ExampleId::Ex2 => ex2(),
        ExampleId::Ex3 => ex3(),
        ExampleId::Ex3n0 => ex3n0(),
        ExampleId::Remark => remark(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_notation() {
        assert_eq!(from_published("64m-36n").unwrap().to_string(), "64*m - 36*n");
        assert_eq!(from_published("12p^2-5p-25").unwrap().to_string(), "12*p1^2 - 5*p1 - 25");
        assert_eq!(from_published("-nq1^2s1").unwrap().to_string(), "-n*q1^2*s1");
        assert_eq!(from_published("p1^2r1").unwrap(), "p1^2*r1".parse().unwrap());
    }

    #[test]
    fn every_example_matches() {
        for id in [ExampleId::Ex1, ExampleId::Ex2, ExampleId::Ex3, ExampleId::Ex3n0, ExampleId::Remark] {
            let r = reproduce(id).unwrap();
            assert!(r.ok, "{}: {:?}", id.name(), r.mismatches().collect::<Vec<_>>());
        }
    }
}
