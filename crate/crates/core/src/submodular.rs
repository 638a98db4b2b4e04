//! Multi-agent set-function maximization: every agent picks one subset of a
//! shared ground set (the empty subset is its opt-out), and the team is scored
//! by a set function of the union of the picks.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::Ordering;

/// Largest ground set representable by [`ElementSet`].
pub const MAX_GROUND_SIZE: usize = 64;
/// Largest ground set accepted by [`check_submodular_monotone`].
pub const CHECK_MAX_GROUND_SIZE: usize = 12;
/// Largest number of joint profiles [`brute_force_opt`] will enumerate.
pub const BRUTE_FORCE_MAX_PROFILES: u64 = 1_000_000;
/// Absolute tolerance for comparing objective values.
pub const VALUE_TOLERANCE: f64 = 1e-9;

/// Subset of a ground set of at most 64 elements.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_elements(elements: &[usize]) -> Result<Self> {
        elements.iter().try_fold(ElementSet::EMPTY, |s, &e| {
            if e >= MAX_GROUND_SIZE {
                Err(Error::argument(format!(
                    "element {e} exceeds the 64-element limit"
                )))
            } else {
                Ok(s.with(e))
            }
        })
    }

    pub fn with(self, e: usize) -> Self {
        ElementSet(self.0 | 1 << e)
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_GROUND_SIZE).filter(move |&e| self.contains(e))
    }

    /// Largest element + 1, or 0 for the empty set.
    fn span(self) -> usize {
        MAX_GROUND_SIZE - self.0.leading_zeros() as usize
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// A real-valued function on subsets of the ground set.
pub trait SetFunction {
    fn value(&self, set: ElementSet) -> f64;
}

impl<F: Fn(ElementSet) -> f64> SetFunction for F {
    fn value(&self, set: ElementSet) -> f64 {
        self(set)
    }
}

/// Weighted coverage: `f(S) = Σ_{e ∈ S} w_e` with non-negative weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageObjective {
    weights: Vec<f64>,
}

impl CoverageObjective {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.len() > MAX_GROUND_SIZE {
            return Err(Error::argument(format!(
                "ground set of {} elements exceeds the 64-element limit",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::argument(format!(
                "coverage weight {w} is not a finite non-negative number"
            )));
        }
        Ok(CoverageObjective { weights })
    }

    pub fn unit(ground_size: usize) -> Result<Self> {
        CoverageObjective::new(vec![1.0; ground_size])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl SetFunction for CoverageObjective {
    fn value(&self, set: ElementSet) -> f64 {
        set.iter()
            .take_while(|&e| e < self.weights.len())
            .map(|e| self.weights[e])
            // An empty `sum()` is -0.0; folding from +0.0 keeps f(∅) = 0 exactly.
            .fold(0.0, |acc, w| acc + w)
    }
}

/// Agents with their action lists and a shared objective over the union of picks.
#[derive(Debug, Clone, PartialEq)]
pub struct SubmodularProblem<F = CoverageObjective> {
    ground_size: usize,
    agents: Vec<Vec<ElementSet>>,
    objective: F,
}

impl<F: SetFunction> SubmodularProblem<F> {
    /// Every agent's list must contain the empty set; actions must stay in the ground set.
    pub fn new(ground_size: usize, agents: Vec<Vec<ElementSet>>, objective: F) -> Result<Self> {
        if ground_size > MAX_GROUND_SIZE {
            return Err(Error::argument(format!(
                "ground set of {ground_size} elements exceeds the 64-element limit"
            )));
        }
        if agents.is_empty() {
            return Err(Error::argument("a problem needs at least one agent"));
        }
        for (i, actions) in agents.iter().enumerate() {
            if !actions.contains(&ElementSet::EMPTY) {
                return Err(Error::argument(format!(
                    "agent {i} has no opt-out (empty) action"
                )));
            }
            if let Some(a) = actions.iter().find(|a| a.span() > ground_size) {
                return Err(Error::argument(format!(
                    "agent {i} action {a} leaves the ground set of size {ground_size}"
                )));
            }
        }
        Ok(SubmodularProblem {
            ground_size,
            agents,
            objective,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn actions(&self, agent: usize) -> &[ElementSet] {
        &self.agents[agent]
    }

    pub fn objective(&self) -> &F {
        &self.objective
    }

    /// Joint action from per-agent action indices.
    pub fn joint(&self, choice: Vec<usize>) -> Result<JointAction> {
        if choice.len() != self.agents.len() {
            return Err(Error::argument(format!(
                "joint action has {} entries for {} agents",
                choice.len(),
                self.agents.len()
            )));
        }
        let mut union = ElementSet::EMPTY;
        for (agent, &idx) in choice.iter().enumerate() {
            let action = self.agents[agent]
                .get(idx)
                .ok_or_else(|| Error::argument(format!("agent {agent} has no action #{idx}")))?;
            union = union.union(*action);
        }
        Ok(JointAction { choice, union })
    }

    /// Joint action from per-agent subsets; each must be in its agent's list.
    pub fn joint_from_sets(&self, sets: &[ElementSet]) -> Result<JointAction> {
        let choice = sets
            .iter()
            .enumerate()
            .map(|(agent, s)| {
                self.agents
                    .get(agent)
                    .and_then(|acts| acts.iter().position(|a| a == s))
                    .ok_or_else(|| {
                        Error::argument(format!("{s} is not an action of agent {agent}"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        self.joint(choice)
    }

    /// Everybody opts out.
    pub fn opt_out(&self) -> JointAction {
        let choice = self
            .agents
            .iter()
            .map(|acts| acts.iter().position(|a| a.is_empty()).expect("validated"))
            .collect();
        JointAction {
            choice,
            union: ElementSet::EMPTY,
        }
    }

    /// Index of the best action of `agent` given the union of earlier picks;
    /// the first maximizer in list order wins.
    pub fn greedy_choice(&self, agent: usize, prior: ElementSet) -> usize {
        let mut best = 0;
        let mut best_value = f64::NEG_INFINITY;
        for (idx, action) in self.agents[agent].iter().enumerate() {
            let v = self.objective.value(prior.union(*action));
            if v > best_value {
                best = idx;
                best_value = v;
            }
        }
        best
    }
}

/// One action index per agent and the union of the chosen subsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JointAction {
    choice: Vec<usize>,
    union: ElementSet,
}

impl JointAction {
    pub fn choice(&self) -> &[usize] {
        &self.choice
    }

    pub fn union(&self) -> ElementSet {
        self.union
    }

    pub fn sets<F>(&self, problem: &SubmodularProblem<F>) -> Vec<ElementSet> {
        self.choice
            .iter()
            .enumerate()
            .map(|(agent, &idx)| problem.agents[agent][idx])
            .collect()
    }
}

/// `W(a) = f(∪ a_i)`.
pub fn evaluate_w<F: SetFunction>(
    problem: &SubmodularProblem<F>,
    joint: &JointAction,
) -> Result<f64> {
    // revalidate: a joint action built for another problem must not slip through
    let checked = problem.joint(joint.choice.clone())?;
    Ok(problem.objective.value(checked.union))
}

/// Ordered greedy: agents act by label, each maximizing the objective given
/// the picks of lower labels and the opt-out of higher ones.
pub fn greedy_execute<F: SetFunction>(
    problem: &SubmodularProblem<F>,
    pi: &Ordering,
) -> Result<(JointAction, f64)> {
    if pi.n() != problem.agent_count() {
        return Err(Error::argument(format!(
            "ordering covers {} agents, problem has {}",
            pi.n(),
            problem.agent_count()
        )));
    }
    let mut choice = vec![0; problem.agent_count()];
    let mut union = ElementSet::EMPTY;
    for &agent in pi.sequence() {
        let idx = problem.greedy_choice(agent, union);
        choice[agent] = idx;
        union = union.union(problem.agents[agent][idx]);
    }
    let value = problem.objective.value(union);
    Ok((JointAction { choice, union }, value))
}

/// Exhaustive maximum over all joint profiles, first maximizer in
/// lexicographic order of action indices.
pub fn brute_force_opt<F: SetFunction>(
    problem: &SubmodularProblem<F>,
) -> Result<(JointAction, f64)> {
    let sizes: Vec<usize> = problem.agents.iter().map(Vec::len).collect();
    let profiles = sizes
        .iter()
        .try_fold(1u64, |acc, &s| acc.checked_mul(s as u64))
        .filter(|&p| p <= BRUTE_FORCE_MAX_PROFILES)
        .ok_or_else(|| {
            Error::budget(format!(
                "brute force is capped at {BRUTE_FORCE_MAX_PROFILES} joint profiles"
            ))
        })?;
    let k = sizes.len();
    let mut idx = vec![0usize; k];
    let mut best = idx.clone();
    let mut best_value = f64::NEG_INFINITY;
    for _ in 0..profiles {
        let union = idx
            .iter()
            .enumerate()
            .fold(ElementSet::EMPTY, |u, (a, &i)| {
                u.union(problem.agents[a][i])
            });
        let v = problem.objective.value(union);
        if v > best_value {
            best_value = v;
            best.clone_from(&idx);
        }
        // last agent varies fastest
        for a in (0..k).rev() {
            idx[a] += 1;
            if idx[a] < sizes[a] {
                break;
            }
            idx[a] = 0;
        }
    }
    let joint = problem.joint(best)?;
    Ok((joint, best_value))
}

/// Checks normalization, monotonicity and diminishing returns over every
/// `A ⊆ B ⊆ E` and `x ∉ B`, within [`VALUE_TOLERANCE`].
pub fn check_submodular_monotone<F: SetFunction + ?Sized>(
    f: &F,
    ground_size: usize,
) -> Result<bool> {
    if ground_size > CHECK_MAX_GROUND_SIZE {
        return Err(Error::budget(format!(
            "property check is capped at {CHECK_MAX_GROUND_SIZE} elements, got {ground_size}"
        )));
    }
    let full: u64 = (1 << ground_size) - 1;
    let values: Vec<f64> = (0..=full).map(|m| f.value(ElementSet(m))).collect();
    if values[0].abs() > VALUE_TOLERANCE {
        return Ok(false);
    }
    for b in 0..=full {
        let mut a = b;
        loop {
            if values[a as usize] > values[b as usize] + VALUE_TOLERANCE {
                return Ok(false);
            }
            for x in (0..ground_size).filter(|x| b >> x & 1 == 0) {
                let gain_a = values[(a | 1 << x) as usize] - values[a as usize];
                let gain_b = values[(b | 1 << x) as usize] - values[b as usize];
                if gain_a < gain_b - VALUE_TOLERANCE {
                    return Ok(false);
                }
            }
            if a == 0 {
                break;
            }
            a = (a - 1) & b;
        }
    }
    Ok(true)
}

/// Random coverage instance: each agent gets the opt-out plus
/// `actions_per_agent` random non-empty subsets; weights are uniform in `[0, 1)`.
pub fn gen_random_coverage_problem(
    n_agents: usize,
    ground_size: usize,
    actions_per_agent: usize,
    seed: u64,
) -> Result<SubmodularProblem> {
    if n_agents == 0 || ground_size == 0 || actions_per_agent == 0 {
        return Err(Error::argument("problem parameters must be at least 1"));
    }
    if ground_size > MAX_GROUND_SIZE {
        return Err(Error::argument(format!(
            "ground set of {ground_size} elements exceeds the 64-element limit"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..ground_size).map(|_| rng.gen::<f64>()).collect();
    let agents = (0..n_agents)
        .map(|_| {
            let mut actions = vec![ElementSet::EMPTY];
            for _ in 0..actions_per_agent {
                let set = loop {
                    let s = (0..ground_size)
                        .filter(|_| rng.gen_bool(0.5))
                        .fold(ElementSet::EMPTY, ElementSet::with);
                    if !s.is_empty() {
                        break s;
                    }
                };
                actions.push(set);
            }
            actions
        })
        .collect();
    SubmodularProblem::new(ground_size, agents, CoverageObjective::new(weights)?)
}

/// JSON form of a coverage problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub ground_size: usize,
    pub weights: Vec<f64>,
    pub agents: Vec<Vec<Vec<usize>>>,
}

impl SubmodularProblem<CoverageObjective> {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProblemFile =
            serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ProblemFile::from(self)).expect("plain data serializes")
    }
}

impl TryFrom<ProblemFile> for SubmodularProblem<CoverageObjective> {
    type Error = Error;

    fn try_from(file: ProblemFile) -> Result<Self> {
        if file.weights.len() != file.ground_size {
            return Err(Error::argument(format!(
                "{} weights for a ground set of {}",
                file.weights.len(),
                file.ground_size
            )));
        }
        let agents = file
            .agents
            .iter()
            .map(|acts| {
                acts.iter()
                    .map(|a| ElementSet::from_elements(a))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SubmodularProblem::new(
            file.ground_size,
            agents,
            CoverageObjective::new(file.weights)?,
        )
    }
}

impl From<&SubmodularProblem<CoverageObjective>> for ProblemFile {
    fn from(p: &SubmodularProblem<CoverageObjective>) -> Self {
        ProblemFile {
            ground_size: p.ground_size,
            weights: p.objective.weights.clone(),
            agents: p
                .agents
                .iter()
                .map(|acts| acts.iter().map(|a| a.iter().collect()).collect())
                .collect(),
        }
    }
}
