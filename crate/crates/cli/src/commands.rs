use std::fs;
use std::path::Path;

use imbalance_lattice::oracle::{closure_equals_order, enumerate_by_partition, OraclePoset};
use imbalance_lattice::sequence::parse_components;
use imbalance_lattice::verify::{self, Property};
use imbalance_lattice::{
    bal, bottom, canonical_code, compare, contraction, decompose_uvw, enumerate, excess_indices,
    expansion_at, hasse, is_join_irreducible_bruteforce, is_join_irreducible_prop2,
    is_join_irreducible_prop3, is_near_constant, lower_expansion, meet, nodes_within_depth,
    scaled_partial_sums, sequence_from_tree, sum_components, top, tree_from_sequence,
    upper_expansion, Ceiling, CodeTree, Codeword, Error, PathLengthSequence,
};

use crate::{Cli, Command, Format, Method, ReportFormat, TreeStyle};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn failed(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::NegativeDepth { .. }
            | Error::DepthOutOfRange { .. }
            | Error::NotSorted { .. }
            | Error::KraftSumNotOne { .. }
            | Error::MalformedTree(_)
            | Error::NotPrefixFree(_)
            | Error::NotALattice { .. } => Failure::failed(err.to_string()),
            _ => Failure::usage(err.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn parse(text: &str) -> Result<PathLengthSequence, Failure> {
    Ok(text.parse::<PathLengthSequence>()?)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents)
        .map_err(|e| Failure::failed(format!("cannot write {}: {e}", path.display())))
}

pub fn run(cli: &Cli) -> CmdResult {
    let ceiling = Ceiling(cli.max_n);
    match &cli.command {
        Command::Validate { seq } => println!("{}", parse(seq)?),
        Command::Suffix { seq } => println!("{}", parse(seq)?.suffix_length()),
        Command::Sums { seq, scale } => {
            let l = parse(seq)?;
            let sums = scaled_partial_sums(&l, scale.unwrap_or(l.last()))?;
            let text: Vec<String> = sums.sums.iter().map(|s| s.to_string()).collect();
            println!("{}", text.join(","));
        }
        Command::Sum { seq } => println!("{}", sum_components(&parse(seq)?)),
        Command::Compare { s, t } => println!("{}", compare(&parse(s)?, &parse(t)?)?),
        Command::Expand { seq, at } => {
            let l = parse(seq)?;
            let out = if let Some(position) = at.position {
                expansion_at(&l, position)?
            } else if at.upper {
                upper_expansion(&l)
            } else {
                lower_expansion(&l)
            };
            println!("{out}");
        }
        Command::Contract { seq } => println!("{}", contraction(&parse(seq)?)?),
        Command::Enumerate { n, format, count, oracle } => {
            let elements: Vec<PathLengthSequence> = if *oracle {
                enumerate_by_partition(*n, ceiling)?.into_iter().collect()
            } else {
                enumerate(*n, ceiling)?.elements().to_vec()
            };
            if *count {
                println!("{}", elements.len());
            } else {
                print_sequences(&elements, *format);
            }
        }
        Command::Meet { s, t, oracle } => {
            let (s, t) = (parse(s)?, parse(t)?);
            let m = if *oracle {
                let u = enumerate(s.len(), ceiling)?;
                OraclePoset::new(u.elements()).meet(&s, &t)?
            } else {
                meet(&s, &t)?
            };
            println!("{m}");
        }
        Command::Join { s, t, oracle } => {
            let (s, t) = (parse(s)?, parse(t)?);
            if s.len() != t.len() {
                return Err(Error::LengthMismatch { left: s.len(), right: t.len() }.into());
            }
            let u = enumerate(s.len(), ceiling)?;
            let j = if *oracle {
                OraclePoset::new(u.elements()).join(&s, &t)?
            } else {
                u.join(&s, &t)?
            };
            println!("{j}");
        }
        Command::Bottom { n } => println!("{}", bottom(*n)?),
        Command::Top { n } => println!("{}", top(*n)?),
        Command::Excess { seq } => {
            let idx: Vec<String> = excess_indices(&parse(seq)?).iter().map(|j| j.to_string()).collect();
            println!("{}", idx.join(","));
        }
        Command::Bal { seq, index } => {
            let l = parse(seq)?;
            match index {
                Some(j) => println!("{}", bal(&l, *j)?),
                None => {
                    for j in excess_indices(&l) {
                        println!("{j}\t{}", bal(&l, j)?);
                    }
                }
            }
        }
        Command::Balancing { n, format } => {
            let steps = enumerate(*n, ceiling)?.minimal_balancing_relation();
            match format {
                Format::Json => println!("{}", json(&steps)),
                Format::Lines => {
                    for s in steps {
                        println!("{} <- {} via {}", s.target, s.source, s.excess_index);
                    }
                }
            }
        }
        Command::Covers { n } => {
            for (lo, hi) in enumerate(*n, ceiling)?.covering_pairs() {
                println!("{lo} < {hi}");
            }
        }
        Command::Hasse { n, dot, json: json_path } => {
            let u = hasse(*n, ceiling)?;
            let body = json(&u.to_hasse_json());
            if let Some(path) = dot {
                write_file(path, &u.to_dot())?;
            }
            match json_path {
                Some(path) => write_file(path, &format!("{body}\n"))?,
                None => println!("{body}"),
            }
        }
        Command::Irreducibles { n, method } => irreducibles(*n, *method, ceiling)?,
        Command::Decompose { seq } => {
            let d = decompose_uvw(&parse(seq)?);
            println!("{}", json(&d));
        }
        Command::NearConstant { segment } => {
            let values: Vec<u32> = if segment.is_empty() {
                Vec::new()
            } else {
                parse_components(segment)?
                    .into_iter()
                    .map(|v| u32::try_from(v).map_err(|_| Failure::usage(format!("bad depth {v}"))))
                    .collect::<Result<_, _>>()?
            };
            println!("{}", is_near_constant(&values).verdict);
        }
        Command::Tree { seq, style, out } => {
            let tree = tree_from_sequence(&parse(seq)?);
            let text = match style {
                TreeStyle::Ascii => tree.to_ascii(),
                TreeStyle::Dot => tree.to_dot(),
            };
            match out {
                Some(path) => write_file(path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Code { seq } => {
            for w in canonical_code(&parse(seq)?) {
                println!("{w}");
            }
        }
        Command::FromCode { codewords } => {
            let words: Vec<Codeword> = if codewords.is_empty() {
                vec![Codeword(Vec::new())]
            } else {
                codewords.split(',').map(str::parse).collect::<Result<_, _>>()?
            };
            let tree = CodeTree::from_codewords(&words)?;
            println!("{}", sequence_from_tree(&tree));
        }
        Command::Nodes { seq, depth } => println!("{}", nodes_within_depth(&parse(seq)?, *depth)),
        Command::Closure { n } => {
            let report = closure_equals_order(*n, ceiling)?;
            println!("{}", json(&report));
            if !report.equal {
                return Err(Failure::failed("closure differs from the order"));
            }
        }
        Command::Verify { n, properties, format, list } => {
            if *list {
                for p in Property::ALL {
                    println!("{p}");
                }
                return Ok(());
            }
            verify_cmd(*n, properties, *format, ceiling)?;
        }
    }
    Ok(())
}

fn print_sequences(elements: &[PathLengthSequence], format: Format) {
    match format {
        Format::Lines => {
            for l in elements {
                println!("{l}");
            }
        }
        Format::Json => println!("{}", json(&elements)),
    }
}

fn irreducibles(n: usize, method: Method, ceiling: Ceiling) -> CmdResult {
    let u = enumerate(n, ceiling)?;
    let mut disagreements = Vec::new();
    for l in u.elements() {
        let keep = match method {
            Method::Bruteforce => is_join_irreducible_bruteforce(l, &u)?,
            Method::Prop2 => is_join_irreducible_prop2(l),
            Method::Prop3 => is_join_irreducible_prop3(l),
            Method::All => {
                let verdicts = [
                    is_join_irreducible_bruteforce(l, &u)?,
                    is_join_irreducible_prop2(l),
                    is_join_irreducible_prop3(l),
                ];
                if verdicts.iter().any(|&v| v != verdicts[0]) {
                    disagreements.push(format!("{l}: {verdicts:?}"));
                }
                verdicts[0]
            }
        };
        if keep {
            println!("{l}");
        }
    }
    if !disagreements.is_empty() {
        return Err(Failure::failed(format!(
            "characterizations disagree (bruteforce, prop2, prop3): {}",
            disagreements.join("; ")
        )));
    }
    Ok(())
}

fn verify_cmd(n: usize, names: &[String], format: ReportFormat, ceiling: Ceiling) -> CmdResult {
    let properties: Vec<Property> = if names.is_empty() {
        Property::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|name| {
                Property::from_name(name)
                    .ok_or_else(|| Failure::usage(format!("unknown property {name:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    let results = verify::run(&properties, n, ceiling)?;
    match format {
        ReportFormat::Text => {
            for r in &results {
                println!("{r}");
            }
        }
        ReportFormat::Json => {
            for r in &results {
                println!("{}", json(r));
            }
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(Failure::failed(format!("{failed} of {} properties failed", results.len())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    /// Library operation -> subcommand that exposes it.
    const OPERATIONS: &[(&str, &str)] = &[
        ("validate", "validate"),
        ("suffix_length", "suffix"),
        ("scaled_partial_sums", "sums"),
        ("compare", "compare"),
        ("expansion_at", "expand"),
        ("upper_expansion", "expand"),
        ("lower_expansion", "expand"),
        ("contraction", "contract"),
        ("enumerate", "enumerate"),
        ("meet", "meet"),
        ("join", "join"),
        ("excess_indices", "excess"),
        ("bal", "bal"),
        ("minimal_balancing_relation", "balancing"),
        ("covering_pairs", "covers"),
        ("hasse", "hasse"),
        ("bottom", "bottom"),
        ("top", "top"),
        ("is_near_constant", "near-constant"),
        ("decompose_uvw", "decompose"),
        ("is_join_irreducible_bruteforce", "irreducibles"),
        ("is_join_irreducible_prop2", "irreducibles"),
        ("is_join_irreducible_prop3", "irreducibles"),
        ("canonical_code", "code"),
        ("tree_from_sequence", "tree"),
        ("sequence_from_tree", "from-code"),
        ("nodes_within_depth", "nodes"),
        ("sum_components", "sum"),
        ("enumerate_by_partition", "enumerate"),
        ("meet_bruteforce", "meet"),
        ("join_bruteforce", "join"),
        ("closure_equals_order", "closure"),
        ("verify", "verify"),
    ];

    #[test]
    fn every_operation_has_a_command() {
        let cmd = Cli::command();
        let names: Vec<&str> = cmd.get_subcommands().map(|c| c.get_name()).collect();
        for (op, sub) in OPERATIONS {
            assert!(names.contains(sub), "{op} maps to missing command {sub}");
        }
        let library_ops = [
            "validate", "suffix_length", "scaled_partial_sums", "compare", "expansion_at",
            "upper_expansion", "lower_expansion", "contraction", "enumerate", "meet", "join",
            "excess_indices", "bal", "minimal_balancing_relation", "covering_pairs", "hasse",
            "bottom", "top", "is_near_constant", "decompose_uvw",
            "is_join_irreducible_bruteforce", "is_join_irreducible_prop2",
            "is_join_irreducible_prop3", "canonical_code", "tree_from_sequence",
            "sequence_from_tree", "nodes_within_depth", "sum_components",
            "enumerate_by_partition", "meet_bruteforce", "join_bruteforce",
            "closure_equals_order",
        ];
        for op in library_ops {
            assert!(OPERATIONS.iter().any(|(o, _)| *o == op), "{op} is not exposed");
        }
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
