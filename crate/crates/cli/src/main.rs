mod args;

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use clap::Parser;
use mintough::gadgets::{self, Gadget};
use mintough::harness::{self, Check, GraphSource, Limits, SweepSpec};
use mintough::io::{parse_edge_list, read_graph6_stream, to_edge_list, to_graph6};
use mintough::recognizers::{self, MinToughVerdict};
use mintough::solver;
use mintough::{Error, ExactRational, Graph, ToughnessValue};

use args::{CheckName, Class, Cli, Command, Format, Input, Kind, Output, VerifyArgs};

/// 0: holds / clean, 1: does not hold, 2: usage or input error.
type Exit = mintough::Result<bool>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Tau { input, output } => tau(&input, &output),
        Command::Check {
            class,
            input,
            t,
            k,
            certificate,
            output,
        } => check(class, &input, t, k, certificate.as_deref(), &output),
        Command::Construct {
            kind,
            input,
            alpha,
            t,
            a,
            b,
            vertex,
            size,
            labels,
            output,
        } => {
            let params = ConstructParams { alpha, t, a, b, vertex, size };
            construct(kind, &input, &params, labels.as_deref(), &output)
        }
        Command::Verify(args) => verify(&args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(input: &Input) -> mintough::Result<Graph> {
    let text = match (&input.g6, &input.path) {
        (Some(inline), _) => {
            if input.format != Format::Graph6 {
                return Err(Error::InvalidParameter("--g6 takes graph6 text".into()));
            }
            inline.clone()
        }
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
        (None, Some(p)) => fs::read_to_string(p)?,
        (None, None) => return Err(Error::InvalidParameter("no input: give a path, \"-\" or --g6".into())),
    };
    match input.format {
        Format::Edgelist => parse_edge_list(&text),
        Format::Graph6 => {
            let mut graphs = read_graph6_stream(text.as_bytes())?;
            match graphs.len() {
                1 => Ok(graphs.remove(0)),
                0 => Err(Error::Graph6 {
                    offset: 0,
                    message: "no graph in input".into(),
                }),
                n => Err(Error::InvalidParameter(format!("expected one graph, input has {n}"))),
            }
        }
    }
}

fn emit(output: &Output, text: &str) -> mintough::Result<()> {
    match &output.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn list(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn tau(input: &Input, output: &Output) -> Exit {
    let g = read_graph(input)?;
    let result = solver::toughness(&g)?;
    let line = match (&result.value, &result.witness) {
        (ToughnessValue::Infinite, _) => "inf".to_string(),
        (value, Some(w)) => format!("{value} witness={}", list(&w.removed)),
        (ToughnessValue::Zero, None) => "0 witness=[]".to_string(),
        (value, None) => value.to_string(),
    };
    emit(output, &format!("{line}\n"))?;
    Ok(true)
}

fn require<T>(value: Option<T>, flag: &str) -> mintough::Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("{flag} is required")))
}

fn check(
    class: Class,
    input: &Input,
    t: Option<ExactRational>,
    k: Option<usize>,
    certificate: Option<&Path>,
    output: &Output,
) -> Exit {
    let g = read_graph(input)?;
    let positive_t = || -> mintough::Result<ExactRational> {
        let t = require(t.clone(), "--t")?;
        if t.is_zero() {
            return Err(Error::InvalidParameter("t must be positive".into()));
        }
        Ok(t)
    };
    let (holds, line, cert) = match class {
        Class::TTough => {
            let verdict = solver::is_t_tough(&g, &positive_t()?)?;
            match verdict.violation() {
                None => (true, "tough".to_string(), serde_json::json!({ "tough": true })),
                Some(w) => (
                    false,
                    format!("not-tough witness={} components={}", list(&w.removed), w.component_count),
                    serde_json::json!({ "tough": false, "violation": w }),
                ),
            }
        }
        Class::MinTough => {
            let t = positive_t()?;
            match recognizers::is_minimally_t_tough(&g, &t)? {
                MinToughVerdict::Minimal(c) => (true, "minimal".to_string(), serde_json::to_value(&c)?),
                MinToughVerdict::NotMinimal(why) => {
                    let reason = format!("{why:?}");
                    (false, format!("not-minimal reason={reason}"), serde_json::json!({ "t": t, "failure": reason }))
                }
            }
        }
        Class::AlmostMin1 => {
            let class = recognizers::is_almost_minimally_1_tough(&g)?;
            let mut cert = serde_json::json!({ "classification": class.label() });
            if class == recognizers::AlmostMinClassification::MinimallyOneTough {
                if let MinToughVerdict::Minimal(c) = recognizers::is_minimally_t_tough(&g, &ExactRational::integer(1))? {
                    cert["certificate"] = serde_json::to_value(&c)?;
                }
            }
            (class.is_almost_minimal(), class.label().to_string(), cert)
        }
        Class::AlphaCritical => {
            let k = require(k, "--k")?;
            let holds = recognizers::is_alpha_critical_decision(&g, k)?;
            let alpha = solver::independence_number(&g).alpha;
            (holds, holds.to_string(), serde_json::json!({ "k": k, "alpha": alpha, "critical": holds }))
        }
    };
    if let Some(path) = certificate {
        fs::write(path, serde_json::to_string_pretty(&cert)? + "\n")?;
    }
    emit(output, &format!("{line}\n"))?;
    Ok(holds)
}

struct ConstructParams {
    alpha: Option<usize>,
    t: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
    vertex: Option<usize>,
    size: Option<usize>,
}

fn construct(kind: Kind, input: &Input, p: &ConstructParams, labels: Option<&Path>, output: &Output) -> Exit {
    let host = || read_graph(input);
    let (graph, labeling) = match kind {
        Kind::GAlpha => split(gadgets::build_g_alpha(&host()?, require(p.alpha, "--alpha")?)?),
        Kind::GTAlpha => split(gadgets::build_g_t_alpha(&host()?, require(p.t, "--t")?, require(p.alpha, "--alpha")?)?),
        Kind::Pendants => split(gadgets::attach_pendants(&host()?, require(p.b, "--b")?)?),
        Kind::H => split(gadgets::build_h(require(p.a, "--a")?, require(p.b, "--b")?)?),
        Kind::HPrime => split(gadgets::build_h_prime(require(p.a, "--a")?, require(p.b, "--b")?)?.gadget),
        Kind::Glue => split(gadgets::glue_h_prime(&host()?, require(p.a, "--a")?, require(p.b, "--b")?)?),
        Kind::Blowup => {
            let g = gadgets::blow_up(&host()?, require(p.vertex, "--vertex")?, require(p.size, "--size")?)?;
            (g, None)
        }
    };
    if let Some(path) = labels {
        let labeling = labeling.ok_or_else(|| Error::InvalidParameter("blowup has no role labeling".into()))?;
        fs::write(path, serde_json::to_string_pretty(&labeling)? + "\n")?;
    }
    let text = match input.format {
        Format::Graph6 => to_graph6(&graph)? + "\n",
        Format::Edgelist => to_edge_list(&graph),
    };
    emit(output, &text)?;
    Ok(true)
}

fn split(g: Gadget) -> (Graph, Option<gadgets::GadgetLabeling>) {
    (g.graph, Some(g.labeling))
}

fn verify(args: &VerifyArgs) -> Exit {
    let source = match (&args.input, args.n_max) {
        (Some(path), _) => GraphSource::Graph6File(path.clone()),
        (None, Some(n_max)) => GraphSource::Enumerate {
            n_min: args.n_min,
            n_max,
        },
        (None, None) => return Err(Error::InvalidParameter("give --n-max or --input".into())),
    };
    let check = match args.check {
        CheckName::ReductionMin1tough => Check::ReductionMin1Tough {
            alphas: args.alpha.clone(),
        },
        CheckName::ReductionMinTTough => Check::ReductionMinTTough {
            t: args.t,
            alphas: args.alpha.clone(),
        },
        CheckName::ReductionOneOverB => Check::ReductionOneOverB { b: args.b },
        CheckName::ReductionAOverB => Check::ReductionAOverB { a: args.a, b: args.b },
        CheckName::LemmaGAlphaTough => Check::LemmaGAlphaTough {
            t: args.t,
            alphas: args.alpha.clone(),
        },
        CheckName::BlowupAlphaCritical => Check::BlowupAlphaCritical {
            size_min: args.size_min,
            size_max: args.size_max,
        },
        CheckName::Structural => Check::Structural,
    };
    let time_budget = match args.time_budget {
        Some(s) if !(s.is_finite() && s > 0.0) => {
            return Err(Error::InvalidParameter("--time-budget must be a positive number of seconds".into()))
        }
        s => s.map(Duration::from_secs_f64),
    };
    let spec = SweepSpec {
        source,
        check,
        limits: Limits {
            max_vertices: args.max_vertices,
            time_budget,
        },
    };
    let report = harness::run(&spec)?;
    if let Some(path) = &args.csv {
        report.write_csv(fs::File::create(path)?)?;
    }
    emit(&args.output, &(report.to_json()? + "\n"))?;
    eprintln!("{}", report.summary_line());
    Ok(report.is_clean())
}
