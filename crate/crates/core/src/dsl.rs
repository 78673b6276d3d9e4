//! Text forms: machine descriptors, fixture points, sets and jump names.
//!
//! Machines follow the grammar documented on [`Descriptor`]. The other forms:
//!
//! ```text
//! point ::= ep [<nats> ; <nats>]        Cantor if binary, else Baire
//!         | nat <n> | top <k> | bot     N, S
//!         | pair(<point>, <point>)
//! set   ::= cyl <word>                  basic open of Cantor space; word `e` is empty
//!         | and(<set>, ...) | or(<set>, ...) | cup(<set>, ...)
//!         | pre(<m>, <set>) | up(<set>) | upc(<set>)
//!         | cut(<point>, <set>) | prod(<set>, <set>)
//!         | lvl(<k> | nabla, <m>)       raw set machine on Cantor space
//! jump  ::= inj <point>                 constant rows
//!         | neg <point>                 complement of a Sierpinski point, in S'
//!         | jfix(<fixture> ; <row>: <nats> ; ...)   noisy rows, then the limit
//! ```

use crate::borel;
use crate::error::{Error, Result};
use crate::jumps::{
    family_shuffle, family_unshuffle, inject_into_jump, jump_lift, jump_pair_to_nabla, nabla_lift,
    nabla_logic, nabla_to_jump_pair, not_into_jump, pointwise_limit, product_shuffle, JumpName,
    NablaLogic,
};
use crate::kernel::machine::{binary_part, bit_flip, head_parity, head_swap};
use crate::kernel::{
    compose, constant, delay, diagonal, identity, pair_env_first, pair_with_second, pairing, split,
    successor, tupled, Descriptor, Env, EventuallyPeriodic, Family, Machine, Nat,
};
use crate::setops::{self, base_logic, cylinder_machine, DOpenSet, Logic};
use crate::spaces::{curry_machine, uncurry_machine, Level, SpaceDescriptor, SpacePoint};

/// Names accepted by `table(...)`. `jprodK`, `jfamK` and `jsplitK` take a
/// level suffix `K`.
pub const TABLE_NAMES: &[&str] = &[
    "succ",
    "flip",
    "bin",
    "headswap",
    "headparity",
    "and",
    "or",
    "join",
    "nand",
    "nor",
    "inject",
    "notjump",
    "nabla2jump",
    "jump2nabla",
    "isempty",
    "e0eq",
    "finones",
    "jprodK",
    "jfamK",
    "jsplitK",
];

pub fn table(name: &str) -> Result<Machine> {
    let suffixed = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|k| k.parse::<u32>().ok())
    };
    Ok(match name {
        "succ" => successor(),
        "flip" => bit_flip(),
        "bin" => binary_part(),
        "headswap" => head_swap(),
        "headparity" => head_parity(),
        "and" => base_logic(Logic::And),
        "or" => base_logic(Logic::Or),
        "join" => base_logic(Logic::Join),
        "nand" => nabla_logic(NablaLogic::And),
        "nor" => nabla_logic(NablaLogic::Or),
        "inject" => inject_into_jump(),
        "notjump" => not_into_jump(),
        "nabla2jump" => nabla_to_jump_pair(),
        "jump2nabla" => jump_pair_to_nabla(),
        "isempty" => borel::is_empty_machine(),
        "e0eq" => borel::e0_equal_machine(),
        "finones" => borel::finitely_many_ones_chi(),
        _ => {
            if let Some(k) = suffixed("jprod") {
                product_shuffle(k)
            } else if let Some(k) = suffixed("jfam") {
                family_shuffle(k)
            } else if let Some(k) = suffixed("jsplit") {
                family_unshuffle(k)
            } else {
                return Err(Error::UnknownTable(name.to_string()));
            }
        }
    })
}

/// Build a machine from a descriptor. `env` binds `pairenv`.
pub fn build_machine(desc: &Descriptor, env: Option<Env>) -> Result<Machine> {
    use Descriptor::*;
    let sub = |d: &Descriptor| build_machine(d, env.clone());
    Ok(match desc {
        Id => identity(),
        Const(v) => constant(v.clone()),
        Compose(a, b) => compose(&sub(a)?, &sub(b)?),
        Interleave(None) => diagonal(),
        Interleave(Some((a, b))) => pairing(&sub(a)?, &sub(b)?),
        Split(s) => split(*s),
        Delay(k, m) => delay(*k as usize, &sub(m)?),
        Table(name) => table(name)?,
        Cylinder(w) => cylinder_machine(w),
        JumpLift(m) => jump_lift(&sub(m)?),
        NablaLift(m) => nabla_lift(&sub(m)?),
        PwLim(ms) => pointwise_limit(&family(ms, &env)?),
        Family(ms) => tupled(&family(ms, &env)?),
        PairWith(ep) => pair_with_second(&ep.clone().into()),
        PairEnv => match env {
            Some(e) => pair_env_first(e),
            None => {
                return Err(Error::Precondition(
                    "pairenv outside a function name".into(),
                ))
            }
        },
        Curry(m) => {
            build_machine(m, None).map_err(|_| {
                Error::Precondition(format!("curry needs an environment-free machine, got {m}"))
            })?;
            curry_machine(m)
        }
        Uncurry(m) => uncurry_machine(&sub(m)?),
        Opaque(label) => {
            return Err(Error::Precondition(format!(
                "host machine `{label}` cannot be rebuilt"
            )))
        }
    })
}

fn family(ms: &[Descriptor], env: &Option<Env>) -> Result<Family> {
    if ms.is_empty() {
        return Err(Error::Precondition("empty machine family".into()));
    }
    let built = ms
        .iter()
        .map(|d| build_machine(d, env.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Family::from_list(built))
}

// ---------------------------------------------------------------------------

const CALL_FORMS: &[&str] = &[
    "const",
    "compose",
    "split",
    "delay",
    "table",
    "cyl",
    "jumplift",
    "nablalift",
    "pwlim",
    "family",
    "pairwith",
    "curry",
    "uncurry",
];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(f) => self.err(format!("expected `{c}`, found `{f}`")),
                None => self.err(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected a name");
        }
        let id = &self.rest()[..len];
        self.pos += len;
        Ok(id)
    }

    fn nat(&mut self) -> Result<Nat> {
        self.ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected a natural number");
        }
        let v = self.rest()[..len]
            .parse()
            .or_else(|_| self.err("number out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected `{c}` after expression")),
        }
    }

    /// Comma separated naturals up to (not including) `stop`, possibly none.
    fn nat_list(&mut self, stop: char) -> Result<Vec<Nat>> {
        let mut v = Vec::new();
        if self.peek() == Some(stop) {
            return Ok(v);
        }
        loop {
            v.push(self.nat()?);
            if !self.eat(',') {
                return Ok(v);
            }
        }
    }

    fn fixture(&mut self) -> Result<EventuallyPeriodic> {
        let start = self.pos;
        if self.ident()? != "ep" {
            self.pos = start;
            return self.err("expected a fixture `ep [..;..]`");
        }
        self.expect('[')?;
        let pre = self.nat_list(';')?;
        self.expect(';')?;
        let period = self.nat_list(']')?;
        if period.is_empty() {
            return self.err("fixture period must be nonempty");
        }
        self.expect(']')?;
        Ok(EventuallyPeriodic::new(pre, period))
    }

    fn bits(&mut self) -> Result<Vec<u8>> {
        self.ws();
        let len = self
            .rest()
            .find(|c: char| c != '0' && c != '1')
            .unwrap_or(self.rest().len());
        let w = self.rest()[..len].bytes().map(|b| b - b'0').collect();
        self.pos += len;
        Ok(w)
    }

    /// A word: bits, or `e` for the empty word.
    fn word(&mut self) -> Result<Vec<u8>> {
        if self.peek() == Some('e') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let w = self.bits()?;
        if w.is_empty() {
            return self.err("expected a binary word or `e`");
        }
        Ok(w)
    }

    fn machines(&mut self) -> Result<Vec<Descriptor>> {
        let mut v = vec![self.machine()?];
        while self.eat(',') {
            v.push(self.machine()?);
        }
        Ok(v)
    }

    fn machine(&mut self) -> Result<Descriptor> {
        self.ws();
        let start = self.pos;
        let id = self.ident()?;
        let d = match id {
            "id" => Descriptor::Id,
            "pairenv" => Descriptor::PairEnv,
            "interleave" => {
                if self.eat('(') {
                    let a = self.machine()?;
                    self.expect(',')?;
                    let b = self.machine()?;
                    self.expect(')')?;
                    Descriptor::Interleave(Some((Box::new(a), Box::new(b))))
                } else {
                    Descriptor::Interleave(None)
                }
            }
            _ => {
                if !CALL_FORMS.contains(&id) {
                    self.pos = start;
                    return self.err(format!("unknown machine `{id}`"));
                }
                self.expect('(')?;
                let d = match id {
                    "const" => Descriptor::Const(self.nat_list(')')?),
                    "compose" => {
                        let ms = self.machines()?;
                        if ms.len() < 2 {
                            return self.err("compose takes at least two machines");
                        }
                        let mut it = ms.into_iter();
                        let first = it.next().unwrap();
                        it.fold(first, |a, b| Descriptor::Compose(Box::new(a), Box::new(b)))
                    }
                    "split" => match self.nat()? {
                        s @ (0 | 1) => Descriptor::Split(s as u8),
                        _ => return self.err("split side must be 0 or 1"),
                    },
                    "delay" => {
                        let k = self.nat()?;
                        self.expect(',')?;
                        Descriptor::Delay(k, Box::new(self.machine()?))
                    }
                    "table" => Descriptor::Table(self.ident()?.to_string()),
                    "cyl" => Descriptor::Cylinder(self.bits()?),
                    "jumplift" => Descriptor::JumpLift(Box::new(self.machine()?)),
                    "nablalift" => Descriptor::NablaLift(Box::new(self.machine()?)),
                    "pwlim" => Descriptor::PwLim(self.machines()?),
                    "family" => Descriptor::Family(self.machines()?),
                    "pairwith" => Descriptor::PairWith(self.fixture()?),
                    "curry" => Descriptor::Curry(Box::new(self.machine()?)),
                    "uncurry" => Descriptor::Uncurry(Box::new(self.machine()?)),
                    other => {
                        self.pos = start;
                        return self.err(format!("unknown machine `{other}`"));
                    }
                };
                self.expect(')')?;
                d
            }
        };
        Ok(d)
    }

    fn point(&mut self) -> Result<SpacePoint> {
        let start = self.pos;
        match self.ident()? {
            "ep" => {
                self.pos = start;
                let ep = self.fixture()?;
                let space = if ep.is_binary() {
                    SpaceDescriptor::Cantor
                } else {
                    SpaceDescriptor::Baire
                };
                Ok(SpacePoint::sequence(space, ep))
            }
            "nat" => Ok(SpacePoint::nat(self.nat()?)),
            "top" => Ok(SpacePoint::sierpinski(Some(self.nat()? as usize))),
            "bot" => Ok(SpacePoint::sierpinski(None)),
            "pair" => {
                self.expect('(')?;
                let a = self.point()?;
                self.expect(',')?;
                let b = self.point()?;
                self.expect(')')?;
                Ok(SpacePoint::pair(&a, &b))
            }
            other => {
                self.pos = start;
                self.err(format!("unknown point form `{other}`"))
            }
        }
    }

    fn sets(&mut self) -> Result<Vec<DOpenSet>> {
        let mut v = vec![self.set()?];
        while self.eat(',') {
            v.push(self.set()?);
        }
        Ok(v)
    }

    fn set(&mut self) -> Result<DOpenSet> {
        let start = self.pos;
        let id = self.ident()?;
        if id == "cyl" {
            return Ok(DOpenSet::cylinder(&self.word()?));
        }
        self.expect('(')?;
        let s = match id {
            "and" | "or" => {
                let sets = self.sets()?;
                let mut it = sets.into_iter();
                let first = it.next().unwrap();
                it.try_fold(first, |a, b| {
                    if id == "and" {
                        a.intersect(&b)
                    } else {
                        a.union(&b)
                    }
                })?
            }
            "cup" => setops::union_of(&self.sets()?)?,
            "pre" => {
                let m = build_machine(&self.machine()?, None)?;
                self.expect(',')?;
                setops::preimage_by(&m, &self.set()?)
            }
            "up" | "upc" => setops::level_up(&self.set()?, id == "upc")?,
            "cut" => {
                let y = self.point()?;
                self.expect(',')?;
                setops::cut(&y, &self.set()?)?
            }
            "prod" => {
                let a = self.set()?;
                self.expect(',')?;
                setops::product_set(&a, &self.set()?)?
            }
            "lvl" => {
                let level = if self.peek() == Some('n') {
                    match self.ident()? {
                        "nabla" => Level::Nabla,
                        _ => return self.err("expected a level number or `nabla`"),
                    }
                } else {
                    Level::Jump(self.nat()? as u32)
                };
                self.expect(',')?;
                let m = build_machine(&self.machine()?, None)?;
                DOpenSet::new(SpaceDescriptor::Cantor, level, m)
            }
            other => {
                self.pos = start;
                return self.err(format!("unknown set form `{other}`"));
            }
        };
        self.expect(')')?;
        Ok(s)
    }

    fn jump(&mut self) -> Result<JumpName> {
        let start = self.pos;
        match self.ident()? {
            "inj" => Ok(JumpName::inject(&self.point()?.name)),
            "neg" => {
                let p = self.point()?;
                if p.space != SpaceDescriptor::Sierpinski {
                    return self.err("neg takes a Sierpinski point");
                }
                Ok(JumpName::new(not_into_jump().apply(&p.name)))
            }
            "jfix" => {
                self.expect('(')?;
                let limit = self.fixture()?;
                let mut noise: Vec<Vec<Nat>> = Vec::new();
                while self.eat(';') {
                    let r = self.nat()? as usize;
                    self.expect(':')?;
                    let mut vals = Vec::new();
                    while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        vals.push(self.nat()?);
                    }
                    if noise.len() <= r {
                        noise.resize(r + 1, Vec::new());
                    }
                    noise[r] = vals;
                }
                self.expect(')')?;
                Ok(JumpName::fixture(limit, noise))
            }
            other => {
                self.pos = start;
                self.err(format!("unknown jump-name form `{other}`"))
            }
        }
    }
}

fn whole<'a, T>(text: &'a str, f: impl FnOnce(&mut Parser<'a>) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(text);
    let v = f(&mut p)?;
    p.end()?;
    Ok(v)
}

pub fn parse_machine(text: &str) -> Result<Descriptor> {
    whole(text, Parser::machine)
}

pub fn parse_fixture(text: &str) -> Result<EventuallyPeriodic> {
    whole(text, Parser::fixture)
}

pub fn parse_point(text: &str) -> Result<SpacePoint> {
    whole(text, Parser::point)
}

pub fn parse_set(text: &str) -> Result<DOpenSet> {
    whole(text, Parser::set)
}

pub fn parse_jump(text: &str) -> Result<JumpName> {
    whole(text, Parser::jump)
}

/// Two jump names separated by a top-level comma.
pub fn parse_jump_pair(text: &str) -> Result<(JumpName, JumpName)> {
    whole(text, |p| {
        let a = p.jump()?;
        p.expect(',')?;
        Ok((a, p.jump()?))
    })
}
