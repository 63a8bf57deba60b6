//! The `gaussnet` command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::export::{to_dot, to_json, NetworkDoc, Subject};
use crate::gaussian::Node;
use crate::network::Network;
use crate::protocols::{secure_split_send, FaultSpec, TreePair};
use crate::router::{RouteTables, Router};
use crate::suite::run_suite;
use crate::trees::TreeKind;

/// Largest `k` accepted on the command line.
pub const MAX_CLI_K: u32 = 1000;

#[derive(Debug, Parser)]
#[command(name = "gaussnet", version, about = "Dense Gaussian networks and their independent spanning trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build G_k and write it as JSON.
    Build {
        #[arg(long, value_parser = parse_k)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the network or a tree as DOT or JSON.
    Export {
        #[arg(long, value_parser = parse_k)]
        k: u32,
        #[arg(long, value_enum, default_value = "network")]
        what: What,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every structural property for a range of k (e.g. 1..8).
    Verify {
        #[arg(long, default_value = "1..8", value_parser = parse_range)]
        k: (u32, u32),
        /// Swap a leftover edge into R'_k first; the suite must then fail.
        #[arg(long)]
        mutate: bool,
    },
    /// Route one message and print the hops and header trace.
    Route {
        #[arg(long, value_parser = parse_k)]
        k: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_node)]
        from: Node,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_node)]
        to: Node,
        #[arg(long, value_enum, default_value = "black")]
        tree: RouteTree,
        /// Use the routing tables exactly as printed, corner cases included.
        #[arg(long)]
        printed_tables: bool,
    },
    /// Broadcast from a root over both trees, optionally with one fault.
    Broadcast {
        #[arg(long, value_parser = parse_k)]
        k: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_node, default_value = "0,0")]
        root: Node,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_node, conflicts_with = "fault_edge")]
        fault_node: Option<Node>,
        /// An edge written as `a,b:c,d`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_edge)]
        fault_edge: Option<(Node, Node)>,
    },
    /// Send a message split into a black and a red packet.
    Split {
        #[arg(long, value_parser = parse_k)]
        k: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_node)]
        from: Node,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_node)]
        to: Node,
    },
    /// Node and edge counts, diameter and distance distribution.
    Stats {
        #[arg(long, value_parser = parse_k)]
        k: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum What {
    Network,
    Black,
    Red,
    Redprime,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RouteTree {
    Black,
    Redprime,
}

fn parse_k(s: &str) -> Result<u32, String> {
    let k: u32 = s.trim().parse().map_err(|_| format!("{s:?} is not a positive integer"))?;
    if !(1..=MAX_CLI_K).contains(&k) {
        return Err(format!("k must be in 1..={MAX_CLI_K}"));
    }
    Ok(k)
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse_k(lo)?, parse_k(hi.trim_start_matches('='))?),
        None => {
            let k = parse_k(s)?;
            (k, k)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

fn parse_node(s: &str) -> Result<Node, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b but got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad coordinate {t:?}"));
    Ok(Node::new(parse(a)?, parse(b)?))
}

fn parse_edge(s: &str) -> Result<(Node, Node), String> {
    let (u, v) = s.split_once(':').ok_or_else(|| format!("expected a,b:c,d but got {s:?}"))?;
    Ok((parse_node(u)?, parse_node(v)?))
}

fn coords(v: Node) -> String {
    format!("{},{}", v.re, v.im)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(2, e.to_string())
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(2, format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(Into::into),
    }
}

fn network_with(k: u32, nodes: &[Node]) -> Result<Network, Failure> {
    let net = Network::build(k)?;
    for &v in nodes {
        net.check_node(v)?;
    }
    Ok(net)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                let _ = writeln!(err, "error: {msg}");
            }
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Build { k, out: path } => {
            let net = Network::build(k)?;
            let text = serde_json::to_string_pretty(&NetworkDoc::new(&net))? + "\n";
            emit(out, path.as_ref(), &text)
        }
        Command::Export { k, what, format, out: path } => {
            let net = Network::build(k)?;
            let subject = match what {
                What::Network => Subject::Network,
                What::Black => Subject::Tree(TreeKind::Black),
                What::Red => Subject::Tree(TreeKind::Red),
                What::Redprime => Subject::Tree(TreeKind::RedPrime),
                What::Both => Subject::Both,
            };
            let text = match format {
                Format::Dot => to_dot(&net, subject)?,
                Format::Json => to_json(&net, subject)?,
            };
            emit(out, path.as_ref(), &text)
        }
        Command::Verify { k: (lo, hi), mutate } => {
            let mut failed = 0;
            for k in lo..=hi {
                let checks = run_suite(k, mutate).map_err(|e| Failure(2, e.to_string()))?;
                for c in checks {
                    let status = if c.pass { "PASS" } else { "FAIL" };
                    let detail = if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) };
                    writeln!(out, "k={k} {}: {status}{detail}", c.name)?;
                    for w in &c.witnesses {
                        writeln!(out, "    {w}")?;
                    }
                    failed += usize::from(!c.pass);
                }
            }
            if failed > 0 {
                writeln!(out, "{failed} properties failed")?;
                return Err(Failure(1, String::new()));
            }
            writeln!(out, "all properties hold")?;
            Ok(())
        }
        Command::Route { k, from, to, tree, printed_tables } => {
            network_with(k, &[from, to])?;
            let kind = match tree {
                RouteTree::Black => TreeKind::Black,
                RouteTree::Redprime => TreeKind::RedPrime,
            };
            let tables = if printed_tables { RouteTables::Printed } else { RouteTables::Amended };
            let router = Router::new(k, kind)?.with_tables(tables);
            let trace = router.trace(from, to).map_err(|e| Failure(1, e.to_string()))?;
            let hops: Vec<String> = trace.iter().map(|(v, _)| coords(*v)).collect();
            writeln!(out, "{}", hops.join(" "))?;
            for (v, header) in &trace {
                writeln!(out, "{}\t{header}\twire={}", coords(*v), hex(&header.to_wire()?))?;
            }
            Ok(())
        }
        Command::Broadcast { k, root, fault_node, fault_edge } => {
            let mut check = vec![root];
            check.extend(fault_node);
            check.extend(fault_edge.iter().flat_map(|(u, v)| [*u, *v]));
            let net = network_with(k, &check)?;
            let fault = match (fault_node, fault_edge) {
                (Some(v), _) => FaultSpec::Node(v),
                (None, Some((u, v))) => FaultSpec::Edge(net.edge(u, v)?),
                (None, None) => FaultSpec::None,
            };
            let rep = TreePair::new(k)?.broadcast(&net, root, &[fault])?;
            let exposure: Vec<_> = rep.exposure.iter().map(|(v, p)| json!({"node": v, "copies": p})).collect();
            let doc = json!({
                "k": k,
                "root": root,
                "fault": fault_json(&fault),
                "delivered": rep.delivered,
                "blocked": rep.blocked,
                "transmissions": rep.transmissions,
                "exposure": exposure,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            Ok(())
        }
        Command::Split { k, from, to } => {
            let net = network_with(k, &[from, to])?;
            let rep = secure_split_send(&net, from, to)?;
            let exposure: Vec<_> = rep.exposure.iter().map(|(v, p)| json!({"node": v, "packets": p})).collect();
            let doc = json!({
                "k": k,
                "from": from,
                "to": to,
                "routes": rep.routes,
                "exposure": exposure,
                "delivered": !rep.delivered.is_empty(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            Ok(())
        }
        Command::Stats { k } => {
            let net = Network::build(k)?;
            writeln!(out, "k={k}")?;
            writeln!(out, "nodes={}", net.node_count())?;
            writeln!(out, "edges={}", net.edge_count())?;
            writeln!(out, "diameter={}", net.diameter())?;
            let hist = net.distance_histogram();
            let parts: Vec<String> = hist.iter().map(|(d, c)| format!("{d}:{c}")).collect();
            writeln!(out, "distances={}", parts.join(" "))?;
            let total: f64 = hist.iter().map(|(d, c)| f64::from(*d) * *c as f64).sum();
            writeln!(out, "mean_distance={:.6}", total / (net.node_count() - 1) as f64)?;
            Ok(())
        }
    }
}

fn fault_json(fault: &FaultSpec) -> serde_json::Value {
    match fault {
        FaultSpec::None => serde_json::Value::Null,
        FaultSpec::Node(v) => json!({ "node": v }),
        FaultSpec::Edge(e) => json!({ "edge": [e.u(), e.v()] }),
    }
}
