use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use sevencolor_core::adversary::by_name;
use sevencolor_core::fixture::fixture;
use sevencolor_core::render::render;
use sevencolor_core::{
    export_trace, import_trace, replay, run, verify, Adversary, Routine, Scripted, Session,
    VerifyOptions,
};

#[derive(Parser)]
#[command(name = "sevencolor", about = "On-line proper interval coloring game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game of Builder's strategy against an adversary.
    Play {
        #[arg(long, default_value = "first-fit")]
        adversary: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trace whose colors the scripted adversary replays.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value = "master")]
        routine: String,
        #[arg(long, default_value_t = 4)]
        omega: usize,
        #[arg(long)]
        render: bool,
        /// Write the resulting trace here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Explore every adversary against a routine.
    Verify {
        #[arg(long, default_value_t = 4)]
        omega: usize,
        #[arg(long, default_value = "master")]
        routine: String,
        #[arg(long)]
        memo: bool,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Directory for traces of failing leaves.
        #[arg(long)]
        export_failures: Option<PathBuf>,
        /// Write the JSON report here as well as to stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Replay a trace and draw the final state.
    Render { trace: PathBuf },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: String,
    },
}

fn routine(name: &str) -> Result<Routine> {
    name.parse().map_err(anyhow::Error::msg)
}

fn start_trace(r: Routine, omega: usize) -> Option<sevencolor_core::Trace> {
    r.start().map(|p| fixture(p, omega))
}

fn read_trace(path: &PathBuf) -> Result<sevencolor_core::Trace> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(import_trace(&text)?)
}

fn play(
    adversary: &str,
    seed: u64,
    trace: Option<PathBuf>,
    routine_name: &str,
    omega: usize,
    show: bool,
    out: Option<PathBuf>,
) -> Result<()> {
    let r = routine(routine_name)?;
    let script = match (adversary, &trace) {
        ("scripted", Some(path)) => {
            let t = read_trace(path)?;
            replay(&t).context("trace does not replay")?;
            Some(t)
        }
        ("scripted", None) => bail!("the scripted adversary needs --trace"),
        _ => None,
    };
    let mut adv: Box<dyn Adversary + Send> = match &script {
        Some(t) => {
            // The fixture moves are Builder's, not answers.
            let skip = start_trace(r, t.omega).map_or(0, |f| f.moves.len());
            Box::new(Scripted::new(t.colors().into_iter().skip(skip).collect()))
        }
        None => by_name(adversary, seed).map_err(anyhow::Error::msg)?,
    };
    let omega = script.as_ref().map_or(omega, |t| t.omega);
    let name = adv.name();
    let mut s = match start_trace(r, omega) {
        None => Session::new(omega, adv.as_mut()),
        Some(t) => Session::resume(replay(&t)?, t, adv.as_mut()),
    };
    let result = run(&mut s, r);
    let (state, played, path) = s.into_parts();
    if let Some(t) = &script {
        if &played != t {
            bail!("trace does not match the strategy's moves");
        }
    }
    if show {
        print!("{}", render(&state));
    }
    if let Some(path) = out {
        fs::write(&path, export_trace(&played))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let step = result.map_err(|e| anyhow::anyhow!("game halted: {e}"))?;
    println!(
        "{} vs {name}: {:?} after {} intervals, {} colors, clique {}, path {}",
        r,
        step.name(),
        state.intervals().len(),
        state.used_colors().len(),
        state.clique_size(),
        path.join(" > ")
    );
    Ok(())
}

fn verify_cmd(
    omega: usize,
    routine_name: &str,
    memo: bool,
    parallel: usize,
    export_failures: Option<PathBuf>,
    json: Option<PathBuf>,
) -> Result<bool> {
    let r = routine(routine_name)?;
    let rep = verify(&VerifyOptions {
        omega,
        routine: r,
        start: start_trace(r, omega),
        memo,
        parallel,
        ..VerifyOptions::default()
    });
    println!("{}", rep.summary());
    let body = serde_json::to_string_pretty(&rep)?;
    println!("{body}");
    if let Some(path) = json {
        fs::write(&path, &body).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(dir) = export_failures {
        fs::create_dir_all(&dir)?;
        for (i, f) in rep.failures.iter().enumerate() {
            fs::write(dir.join(format!("failure-{i}.json")), export_trace(&f.trace))?;
        }
    }
    Ok(rep.all_leaves_force_7 && rep.strategy_errors == 0 && rep.containment_violations == 0)
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Play {
            adversary,
            seed,
            trace,
            routine,
            omega,
            render,
            out,
        } => play(&adversary, seed, trace, &routine, omega, render, out),
        Command::Verify {
            omega,
            routine,
            memo,
            parallel,
            export_failures,
            json,
        } => {
            if !verify_cmd(omega, &routine, memo, parallel, export_failures, json)? {
                bail!("verification failed");
            }
            Ok(())
        }
        Command::Render { trace } => {
            let t = read_trace(&trace)?;
            print!("{}", render(&replay(&t)?));
            Ok(())
        }
        Command::Serve { addr } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(async {
                let listener = tokio::net::TcpListener::bind(&addr).await?;
                eprintln!("listening on {addr}");
                sevencolor_service::serve(listener).await?;
                Ok(())
            })
        }
    }
}
