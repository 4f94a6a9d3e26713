use std::fmt;

use serde_json::{json, Value};

use qcat_core::algebra::{format_rational, parse_rational};
use qcat_core::fock::{apply_word, vacuum_expectation, TestVector};
use qcat_core::moments::{build_pset, cross_check};
use qcat_core::pairings::{
    counterpart, enumerate_ncpp, enumerate_pp, plus_sequences, PairPartition,
};
use qcat_core::sequences::{
    catalan, double_factorial_odd, methods_for, sequence_table, u_recurrence_values, w_direct,
    Method, SequenceTable,
};
use qcat_core::verify::VerifyParams;
use qcat_core::{BigRational, EpsilonClass, EpsilonSequence, QPolynomial};

use crate::args::{EnumArgs, EnumKind, MomentArgs, SeqArgs, SeqKind, VerifyArgs};
use crate::render::{columns, fields, Output};

/// Bad input; reported on stderr with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type CmdResult = Result<Output, UsageError>;

fn usage(flag: &str, err: impl fmt::Display) -> UsageError {
    UsageError(format!("{flag}: {err}"))
}

fn check_cap(flag: &str, n: usize, cap: usize) -> Result<(), UsageError> {
    if n > cap {
        return Err(usage(flag, format!("{n} exceeds QCAT_MAX_N = {cap}")));
    }
    Ok(())
}

fn parse_eps(text: &str) -> Result<EpsilonSequence, UsageError> {
    EpsilonSequence::parse(text).map_err(|e| usage("--eps", e))
}

fn parse_q(text: Option<&str>) -> Result<Option<BigRational>, UsageError> {
    text.map(|t| parse_rational(t).map_err(|e| usage("--q", e)))
        .transpose()
}

fn pairs_string(theta: &PairPartition) -> String {
    serde_json::to_string(theta.pairs()).expect("pairs serialize")
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("library types serialize")
}

pub fn seq(args: &SeqArgs, cap: usize) -> CmdResult {
    let q = parse_q(args.q.as_deref())?;
    if args.which == SeqKind::Table {
        if args.method.is_some() {
            return Err(usage("--method", "not accepted by seq table"));
        }
        return Ok(table(args.max, q.as_ref()));
    }
    let name = args.which.name();
    let methods: Vec<Method> = match args.method.map(|m| m.method()) {
        None => vec![methods_for(name)[0]],
        Some(None) => methods_for(name).to_vec(),
        Some(Some(m)) => vec![m],
    };
    if methods
        .iter()
        .any(|m| matches!(m, Method::Operator | Method::Enumeration))
    {
        check_cap("--max", args.max, cap)?;
    }
    let mut tables: Vec<SequenceTable> = Vec::new();
    for m in methods {
        let t = sequence_table(name, args.max, m).map_err(|e| usage("--method", e))?;
        tables.push(match &q {
            Some(q0) => t.eval(q0).map_err(|e| usage("--q", e))?,
            None => t,
        });
    }
    let agree = tables.windows(2).all(|w| w[0].values == w[1].values);

    let mut rows = vec![std::iter::once("n".to_string())
        .chain(tables.iter().map(|t| t.method.to_string()))
        .collect::<Vec<_>>()];
    for n in 0..=args.max {
        rows.push(
            std::iter::once(n.to_string())
                .chain(tables.iter().map(|t| t.values[n].to_string()))
                .collect(),
        );
    }
    let mut text = columns(&rows);
    if tables.len() > 1 {
        text.push_str(if agree {
            "all methods agree\n"
        } else {
            "METHODS DISAGREE\n"
        });
    }
    let json = if tables.len() == 1 {
        to_json(&tables[0])
    } else {
        json!({ "name": name, "tables": tables, "agree": agree })
    };
    Ok(Output {
        ok: agree,
        text,
        json,
        csv: rows,
    })
}

fn table(max: usize, q: Option<&BigRational>) -> Output {
    let u = u_recurrence_values(max);
    let header = ["n", "C_n", "w_n", "u_n", "(2n-1)!!"]
        .map(String::from)
        .to_vec();
    let mut rows = vec![header];
    let mut entries = Vec::new();
    for (n, u_n) in u.iter().enumerate() {
        let w = w_direct(n);
        let w = match q {
            Some(q0) => format_rational(&w.eval(q0).expect("w_n has no negative powers")),
            None => w.to_string(),
        };
        let row = vec![
            n.to_string(),
            catalan(n).to_string(),
            w,
            u_n.to_string(),
            double_factorial_odd(n).to_string(),
        ];
        entries.push(json!({
            "n": n, "C_n": row[1], "w_n": row[2], "u_n": row[3], "(2n-1)!!": row[4],
        }));
        rows.push(row);
    }
    Output {
        ok: true,
        text: columns(&rows),
        json: Value::Array(entries),
        csv: rows,
    }
}

pub fn enumerate(args: &EnumArgs, cap: usize) -> CmdResult {
    check_cap("--n", args.n, cap)?;
    if args.kind == EnumKind::Plus {
        let words = plus_sequences(args.n);
        return Ok(listing(
            "epsilon",
            args.count_only,
            words.iter().map(|w| (w.to_string(), to_json(w))),
        ));
    }
    let items = match args.kind {
        EnumKind::Pp => enumerate_pp(args.n),
        _ => enumerate_ncpp(args.n),
    };
    Ok(listing(
        "pairs",
        args.count_only,
        items.map(|t| (pairs_string(&t), to_json(&t))),
    ))
}

fn listing(column: &str, count_only: bool, items: impl Iterator<Item = (String, Value)>) -> Output {
    if count_only {
        let count = items.count();
        return Output {
            ok: true,
            text: count.to_string(),
            json: json!({ "count": count }),
            csv: vec![vec!["count".into()], vec![count.to_string()]],
        };
    }
    let mut text = String::new();
    let mut json_items = Vec::new();
    let mut csv = vec![vec![column.to_string()]];
    for (line, value) in items {
        text.push_str(&line);
        text.push('\n');
        csv.push(vec![line]);
        json_items.push(value);
    }
    Output {
        ok: true,
        text,
        json: Value::Array(json_items),
        csv,
    }
}

pub fn show_counterpart(eps: &str) -> CmdResult {
    let eps = parse_eps(eps)?;
    let theta = counterpart(&eps).map_err(|e| usage("--eps", e))?;
    let depths = theta.depths().expect("counterparts are non-crossing");
    let class = eps.classify().expect("nonempty");
    let text = fields(&[
        ("epsilon", eps.to_string()),
        ("class", class.to_string()),
        ("pairs", pairs_string(&theta)),
        ("depths", serde_json::to_string(&depths).expect("serialize")),
    ]);
    let csv = vec![vec!["left".to_string(), "right".into(), "depth".into()]]
        .into_iter()
        .chain(
            theta
                .pairs()
                .iter()
                .zip(&depths)
                .map(|(&(l, r), d)| vec![l.to_string(), r.to_string(), d.to_string()]),
        )
        .collect();
    Ok(Output {
        ok: true,
        text,
        json: to_json(&theta),
        csv,
    })
}

pub fn pset(eps: &str, list: bool, cap: usize) -> CmdResult {
    let eps = parse_eps(eps)?;
    check_cap("--eps", eps.len() / 2, cap)?;
    let p = build_pset(&eps).map_err(|e| usage("--eps", e))?;
    let members: Vec<(PairPartition, usize)> = p
        .members()
        .map(|t| {
            let c = t.crossing_number();
            (t, c)
        })
        .collect();
    let fixed = serde_json::to_string(&p.fixed_pairs).expect("serialize");
    let shallow = serde_json::to_string(&p.shallow_ground).expect("serialize");
    let mut text = fields(&[
        ("epsilon", eps.to_string()),
        ("counterpart", pairs_string(&p.counterpart)),
        ("fixed pairs", fixed),
        ("shallow labels", shallow),
        ("cardinality", members.len().to_string()),
    ]);
    let mut json = json!({
        "epsilon": eps,
        "counterpart": p.counterpart,
        "fixed_pairs": p.fixed_pairs,
        "shallow_ground": p.shallow_ground,
        "cardinality": members.len(),
    });
    let mut csv = vec![vec!["pairs".to_string(), "crossings".into()]];
    if list {
        let rows: Vec<Vec<String>> = members
            .iter()
            .map(|(t, c)| vec![pairs_string(t), c.to_string()])
            .collect();
        text.push_str(&columns(
            &std::iter::once(vec!["pairs".to_string(), "c".into()])
                .chain(rows.iter().cloned())
                .collect::<Vec<_>>(),
        ));
        json["members"] = members
            .iter()
            .map(|(t, c)| json!({ "pairs": t.pairs(), "crossings": c }))
            .collect();
        csv.extend(rows);
    } else {
        csv = vec![
            vec!["cardinality".to_string()],
            vec![members.len().to_string()],
        ];
    }
    Ok(Output {
        ok: true,
        text,
        json,
        csv,
    })
}

fn parse_tests(text: Option<&str>, len: usize) -> Result<Vec<TestVector>, UsageError> {
    let Some(text) = text else {
        return Ok(vec![TestVector::e1(); len]);
    };
    let tests: Vec<TestVector> = text
        .split(';')
        .map(|v| TestVector::parse(v).map_err(|e| usage("--tests", e)))
        .collect::<Result<_, _>>()?;
    if tests.len() != len {
        return Err(usage(
            "--tests",
            format!("expected {len} vectors, got {}", tests.len()),
        ));
    }
    Ok(tests)
}

fn show_value(p: &QPolynomial, q: Option<&BigRational>) -> Result<(String, Value), UsageError> {
    match q {
        Some(q0) => {
            let v = format_rational(&p.eval(q0).map_err(|e| usage("--q", e))?);
            Ok((v.clone(), Value::String(v)))
        }
        None => Ok((p.to_string(), to_json(p))),
    }
}

pub fn moment(args: &MomentArgs, cap: usize) -> CmdResult {
    let eps = parse_eps(&args.eps)?;
    check_cap("--eps", eps.len().div_ceil(2), cap)?;
    let q = parse_q(args.q.as_deref())?;
    let tests = parse_tests(args.tests.as_deref(), eps.len())?;
    let class = eps.classify().map_err(|e| usage("--eps", e))?;

    // minus words: the operator route gives 0 and P_n(eps) is empty
    let (operator, combinatorial) = if class == EpsilonClass::Minus {
        let op = vacuum_expectation(&eps, &tests).map_err(|e| usage("--tests", e))?;
        (op, QPolynomial::zero())
    } else {
        let r = cross_check(&eps, &tests).map_err(|e| usage("--tests", e))?;
        (r.operator_value, r.combinatorial_value)
    };
    let (op_text, op_json) = show_value(&operator, q.as_ref())?;
    let (comb_text, comb_json) = show_value(&combinatorial, q.as_ref())?;
    let agree = op_text == comb_text;

    let mut lines = vec![
        ("epsilon", eps.to_string()),
        ("class", class.to_string()),
        ("operator", op_text.clone()),
        ("combinatorial", comb_text.clone()),
        ("agree", agree.to_string()),
    ];
    let mut json = json!({
        "epsilon": eps,
        "class": class,
        "operator": op_json,
        "combinatorial": comb_json,
        "agree": agree,
    });
    if let Some(q0) = &q {
        json["q"] = Value::String(format_rational(q0));
    }
    if args.dump_state {
        let state = apply_word(&eps, &tests).map_err(|e| usage("--tests", e))?;
        lines.push(("state", serde_json::to_string(&state).expect("serialize")));
        json["state"] = to_json(&state);
    }
    Ok(Output {
        ok: agree,
        text: fields(&lines),
        json,
        csv: vec![
            ["epsilon", "class", "operator", "combinatorial", "agree"]
                .map(String::from)
                .to_vec(),
            vec![
                eps.to_string(),
                class.to_string(),
                op_text,
                comb_text,
                agree.to_string(),
            ],
        ],
    })
}

pub fn verify(args: &VerifyArgs, cap: usize) -> CmdResult {
    check_cap("--max", args.max, cap)?;
    let params = VerifyParams {
        max: args.max,
        seed: args.seed,
        trials: args.trials,
    };
    let reports: Vec<_> = args
        .suite
        .suites()
        .into_iter()
        .map(|s| s.run(&params))
        .collect();
    let ok = reports.iter().all(|r| r.passed());
    let mut text: String = reports.iter().map(ToString::to_string).collect();
    let passed = reports.iter().filter(|r| r.passed()).count();
    text.push_str(&format!("{passed}/{} suites passed\n", reports.len()));
    let mut csv = vec![["suite", "check", "passed", "detail"]
        .map(String::from)
        .to_vec()];
    for r in &reports {
        for c in &r.checks {
            csv.push(vec![
                r.name.clone(),
                c.name.clone(),
                c.passed.to_string(),
                c.detail.clone(),
            ]);
        }
    }
    Ok(Output {
        ok,
        text,
        json: json!({ "passed": ok, "suites": reports }),
        csv,
    })
}
