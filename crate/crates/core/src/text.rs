//! Text formats: graph documents, rule files, node maps, and DOT export.
//!
//! ```text
//! signature { f/2 g/2 }          // optional
//! graph G {
//!   m: f(n, o)
//!   n: .                          // unlabeled
//!   o: g(n, p)
//!   p: a                          // constant, same as a()
//! }
//! ```
//!
//! A rules file holds `rule` blocks and optional `signature`, `fuel N` and
//! `trim a, b` directives:
//!
//! ```text
//! rule add1 {
//!   lhs { n: add(o, m)  m: cons(p, m)  o: .  p: . }
//!   disconnect { (m,2) }
//!   rhs { n: add(o, m)  q: cons(o, m)  m: cons(p, q)  o: .  p: . }
//!   rho { m[2] -> q }
//!   redirect { }
//! }
//! ```
//!
//! Omitted `rho` entries map a node to the node of the same name; the fresh
//! nodes `n[i]` of the disconnected edges must be listed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeDecl, NodeId, Signature, Term};
use crate::rewrite::{LrrRule, RewriteSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Punct(char),
    Arrow,
    Bullet,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_id_char(c: char) -> bool {
    c.is_alphanumeric() || "_'#$@!?%&*+~^".contains(c)
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
        let c = chars[*i];
        *i += 1;
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            col += 2;
            tokens.push(Token { tok: Tok::Arrow, line: tl, col: tc });
        } else if c == '.' || c == '•' {
            advance(&mut i, &mut line, &mut col);
            tokens.push(Token { tok: Tok::Bullet, line: tl, col: tc });
        } else if "{}():,/".contains(c) {
            advance(&mut i, &mut line, &mut col);
            tokens.push(Token { tok: Tok::Punct(c), line: tl, col: tc });
        } else if is_id_char(c) {
            let mut s = String::new();
            loop {
                while i < chars.len() && is_id_char(chars[i]) {
                    s.push(chars[i]);
                    advance(&mut i, &mut line, &mut col);
                }
                // `[digits]` suffix of a fresh node name
                if chars.get(i) == Some(&'[') {
                    let digits = chars[i + 1..].iter().take_while(|d| d.is_ascii_digit()).count();
                    if digits == 0 || chars.get(i + 1 + digits) != Some(&']') {
                        return Err(syntax(line, col, "expected `[digits]` in node name"));
                    }
                    for _ in 0..digits + 2 {
                        s.push(chars[i]);
                        advance(&mut i, &mut line, &mut col);
                    }
                    continue;
                }
                break;
            }
            tokens.push(Token { tok: Tok::Ident(s), line: tl, col: tc });
        } else {
            return Err(syntax(tl, tc, format!("unexpected character `{c}`")));
        }
    }
    tokens.push(Token { tok: Tok::Eof, line, col });
    Ok(tokens)
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Arrow => "`->`".into(),
        Tok::Bullet => "`.`".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Node declarations of one graph block, with source positions.
#[derive(Debug, Clone)]
struct DeclBlock {
    decls: Vec<NodeDecl>,
    decl_pos: BTreeMap<NodeId, (usize, usize)>,
    first_use: BTreeMap<NodeId, (usize, usize)>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let t = self.peek();
        syntax(t.line, t.col, format!("expected {expected}, found {}", describe(&t.tok)))
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn eat_punct(&mut self, c: char) -> bool {
        let hit = self.at_punct(c);
        if hit {
            self.bump();
        }
        hit
    }

    fn expect_punct(&mut self, c: char) -> Result<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.at_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{kw}`")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let t = self.bump();
                Ok((s, t.line, t.col))
            }
            _ => Err(self.error(what)),
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let (s, line, col) = self.ident(what)?;
        s.parse()
            .map_err(|_| syntax(line, col, format!("expected {what}, found `{s}`")))
    }

    fn expect_eof(&mut self) -> Result<()> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    /// `{ f/2 g/1 … }`, commas optional.
    fn signature_block(&mut self, signature: &mut Signature) -> Result<()> {
        self.expect_punct('{')?;
        while !self.eat_punct('}') {
            let (sym, line, col) = self.ident("a symbol")?;
            self.expect_punct('/')?;
            let arity = self.number("an arity")?;
            signature
                .declare(sym.as_str(), arity)
                .map_err(|e| positioned(line, col, e))?;
            self.eat_punct(',');
        }
        Ok(())
    }

    /// `{ id: sym(args) | id: . … }`
    fn decl_block(&mut self) -> Result<DeclBlock> {
        self.expect_punct('{')?;
        let mut block = DeclBlock {
            decls: Vec::new(),
            decl_pos: BTreeMap::new(),
            first_use: BTreeMap::new(),
        };
        while !self.eat_punct('}') {
            let (id, line, col) = self.ident("a node name or `}`")?;
            let id = NodeId::from(id);
            if block.decl_pos.contains_key(&id) {
                return Err(positioned(line, col, Error::DuplicateNode(id)));
            }
            block.decl_pos.insert(id.clone(), (line, col));
            self.expect_punct(':')?;
            if self.peek().tok == Tok::Bullet {
                self.bump();
                block.decls.push(NodeDecl {
                    id,
                    term: None,
                });
                continue;
            }
            let (symbol, _, _) = self.ident("a symbol or `.`")?;
            let mut args = Vec::new();
            if self.eat_punct('(') {
                while !self.eat_punct(')') {
                    if !args.is_empty() {
                        self.expect_punct(',')?;
                    }
                    let (arg, al, ac) = self.ident("a node name")?;
                    let arg = NodeId::from(arg);
                    block.first_use.entry(arg.clone()).or_insert((al, ac));
                    args.push(arg);
                }
            }
            block.decls.push(NodeDecl {
                id,
                term: Some(Term::new(&symbol, args)),
            });
        }
        Ok(block)
    }

    fn edge(&mut self) -> Result<Edge> {
        self.expect_punct('(')?;
        let (n, _, _) = self.ident("a node name")?;
        self.expect_punct(',')?;
        let i = self.number("an argument index")?;
        self.expect_punct(')')?;
        Ok(Edge::new(n, i))
    }

    fn pair(&mut self) -> Result<(NodeId, NodeId)> {
        self.expect_punct('(')?;
        let (a, _, _) = self.ident("a node name")?;
        self.expect_punct(',')?;
        let (b, _, _) = self.ident("a node name")?;
        self.expect_punct(')')?;
        Ok((a.into(), b.into()))
    }

    /// `{ a -> b, … }`, commas optional.
    fn map_block(&mut self) -> Result<BTreeMap<NodeId, NodeId>> {
        self.expect_punct('{')?;
        let mut map = BTreeMap::new();
        while !self.eat_punct('}') {
            let (a, line, col) = self.ident("a node name or `}`")?;
            if self.peek().tok != Tok::Arrow {
                return Err(self.error("`->`"));
            }
            self.bump();
            let (b, _, _) = self.ident("a node name")?;
            if map.insert(NodeId::from(a.as_str()), NodeId::from(b)).is_some() {
                return Err(syntax(line, col, format!("node `{a}` is mapped twice")));
            }
            self.eat_punct(',');
        }
        Ok(map)
    }
}

fn positioned(line: usize, col: usize, e: Error) -> Error {
    match e {
        Error::Syntax { .. } | Error::Positioned { .. } => e,
        other => Error::Positioned {
            line,
            col,
            source: Box::new(other),
        },
    }
}

/// Builds the graph of a declaration block, attaching the position of the
/// offending declaration or reference to any error.
fn build_block(block: &DeclBlock, signature: &Signature, at: (usize, usize)) -> Result<Graph> {
    Graph::build(block.decls.iter().cloned(), signature).map_err(|e| {
        let pos = match &e {
            Error::UnknownNode(n) => block.first_use.get(n).copied(),
            Error::DuplicateNode(n) | Error::ArityMismatch { node: n, .. } => {
                block.decl_pos.get(n).copied()
            }
            Error::InconsistentArity { symbol, .. } => block
                .decls
                .iter()
                .filter(|d| d.term.as_ref().is_some_and(|t| t.symbol == *symbol))
                .nth(1)
                .and_then(|d| block.decl_pos.get(&d.id).copied()),
            _ => None,
        };
        let (line, col) = pos.unwrap_or(at);
        positioned(line, col, e)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphDocument {
    pub name: String,
    pub graph: Graph,
}

pub fn parse_graph_document(text: &str) -> Result<GraphDocument> {
    let mut p = Parser::new(text)?;
    let mut signature = Signature::new();
    if p.at_keyword("signature") {
        p.bump();
        p.signature_block(&mut signature)?;
    }
    let start = p.peek().clone();
    p.expect_keyword("graph")?;
    let (name, _, _) = p.ident("a graph name")?;
    let block = p.decl_block()?;
    p.expect_eof()?;
    let graph = build_block(&block, &signature, (start.line, start.col))?;
    Ok(GraphDocument { name, graph })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    parse_graph_document(text).map(|d| d.graph)
}

/// `map <name> { a -> b, … }`
pub fn parse_node_map(text: &str) -> Result<(String, BTreeMap<NodeId, NodeId>)> {
    let mut p = Parser::new(text)?;
    p.expect_keyword("map")?;
    let (name, _, _) = p.ident("a map name")?;
    let map = p.map_block()?;
    p.expect_eof()?;
    Ok((name, map))
}

pub fn parse_rules(text: &str) -> Result<RewriteSystem> {
    let mut p = Parser::new(text)?;
    let mut signature = Signature::new();
    let mut fuel = None;
    let mut trim_roots: Option<Vec<NodeId>> = None;
    let mut parsed = Vec::new();

    loop {
        let t = p.peek().clone();
        match &t.tok {
            Tok::Eof => break,
            Tok::Ident(kw) if kw == "signature" => {
                p.bump();
                p.signature_block(&mut signature)?;
            }
            Tok::Ident(kw) if kw == "fuel" => {
                p.bump();
                fuel = Some(p.number("a step count")?);
            }
            Tok::Ident(kw) if kw == "trim" => {
                p.bump();
                let roots = trim_roots.get_or_insert_with(Vec::new);
                loop {
                    roots.push(p.ident("a node name")?.0.into());
                    if !p.eat_punct(',') {
                        break;
                    }
                }
            }
            Tok::Ident(kw) if kw == "rule" => {
                p.bump();
                parsed.push(rule_block(&mut p)?);
            }
            _ => return Err(p.error("`rule`, `signature`, `fuel` or `trim`")),
        }
    }

    let mut rules = Vec::new();
    for r in parsed {
        let in_rule = |e: Error| Error::InRule {
            rule: r.name.clone(),
            source: Box::new(e),
        };
        let lhs = build_block(&r.lhs, &signature, r.pos).map_err(in_rule)?;
        let rhs = build_block(&r.rhs, &signature, r.pos).map_err(in_rule)?;
        signature.merge(lhs.signature()).map_err(in_rule)?;
        signature.merge(rhs.signature()).map_err(in_rule)?;

        let mut rho = r.rho.clone();
        for e in &r.disconnect {
            let fresh = e.source.edge_child(e.index);
            if !rho.contains_key(&fresh) {
                return Err(in_rule(syntax(
                    r.pos.0,
                    r.pos.1,
                    format!("rho must give the image of fresh node {fresh}"),
                )));
            }
        }
        for n in lhs.nodes() {
            rho.entry(n.clone()).or_insert_with(|| n.clone());
        }
        let rule = LrrRule::new(
            r.name.clone(),
            Arc::new(lhs),
            r.disconnect.clone(),
            Arc::new(rhs),
            rho,
            r.redirects.clone(),
        )
        .map_err(in_rule)?;
        rules.push(rule);
    }
    let mut system = RewriteSystem::new(signature, rules)?;
    if let Some(f) = fuel {
        system.fuel = f;
    }
    system.trim_roots = trim_roots;
    Ok(system)
}

struct ParsedRule {
    name: String,
    pos: (usize, usize),
    lhs: DeclBlock,
    rhs: DeclBlock,
    disconnect: BTreeSet<Edge>,
    rho: BTreeMap<NodeId, NodeId>,
    redirects: Vec<(NodeId, NodeId)>,
}

fn rule_block(p: &mut Parser) -> Result<ParsedRule> {
    let (name, line, col) = p.ident("a rule name")?;
    p.expect_punct('{')?;
    let (mut lhs, mut rhs) = (None, None);
    let mut disconnect = BTreeSet::new();
    let mut rho = BTreeMap::new();
    let mut redirects = Vec::new();
    let mut seen = BTreeSet::new();
    while !p.eat_punct('}') {
        let (section, sl, sc) = p.ident("a rule section")?;
        if !seen.insert(section.clone()) {
            return Err(syntax(sl, sc, format!("section `{section}` given twice")));
        }
        match section.as_str() {
            "lhs" => lhs = Some(p.decl_block()?),
            "rhs" => rhs = Some(p.decl_block()?),
            "disconnect" => {
                p.expect_punct('{')?;
                while !p.eat_punct('}') {
                    disconnect.insert(p.edge()?);
                    p.eat_punct(',');
                }
            }
            "rho" => rho = p.map_block()?,
            "redirect" => {
                p.expect_punct('{')?;
                while !p.eat_punct('}') {
                    redirects.push(p.pair()?);
                    p.eat_punct(',');
                }
            }
            other => {
                return Err(syntax(
                    sl,
                    sc,
                    format!("unknown section `{other}`; expected lhs, disconnect, rhs, rho or redirect"),
                ))
            }
        }
    }
    let missing = |what: &str| syntax(line, col, format!("rule `{name}` has no {what} block"));
    Ok(ParsedRule {
        lhs: lhs.ok_or_else(|| missing("lhs"))?,
        rhs: rhs.ok_or_else(|| missing("rhs"))?,
        name,
        pos: (line, col),
        disconnect,
        rho,
        redirects,
    })
}

fn write_decls(out: &mut String, graph: &Graph, indent: &str) {
    for d in graph.decls() {
        match &d.term {
            None => writeln!(out, "{indent}{}: .", d.id).unwrap(),
            Some(t) if t.args.is_empty() => writeln!(out, "{indent}{}: {}", d.id, t.symbol).unwrap(),
            Some(t) => {
                let args: Vec<&str> = t.args.iter().map(NodeId::as_str).collect();
                writeln!(out, "{indent}{}: {}({})", d.id, t.symbol, args.join(", ")).unwrap()
            }
        }
    }
}

fn write_signature(out: &mut String, signature: &Signature) {
    let entries: Vec<String> = signature.iter().map(|(s, a)| format!("{s}/{a}")).collect();
    writeln!(out, "signature {{ {} }}", entries.join(" ")).unwrap();
}

/// Graph document text; declared symbols no node uses are kept in a
/// `signature` block.
pub fn serialize_graph(name: &str, graph: &Graph) -> String {
    let mut out = String::new();
    let used = graph.label_census();
    if graph.signature().iter().any(|(s, _)| !used.contains_key(s)) {
        write_signature(&mut out, graph.signature());
    }
    writeln!(out, "graph {name} {{").unwrap();
    write_decls(&mut out, graph, "  ");
    out.push_str("}\n");
    out
}

pub fn serialize_rules(system: &RewriteSystem) -> String {
    let mut out = String::new();
    if !system.signature.is_empty() {
        write_signature(&mut out, &system.signature);
    }
    writeln!(out, "fuel {}", system.fuel).unwrap();
    if let Some(roots) = &system.trim_roots {
        let roots: Vec<&str> = roots.iter().map(NodeId::as_str).collect();
        writeln!(out, "trim {}", roots.join(", ")).unwrap();
    }
    for rule in system.rules() {
        writeln!(out, "\nrule {} {{", rule.name()).unwrap();
        out.push_str("  lhs {\n");
        write_decls(&mut out, rule.lhs(), "    ");
        out.push_str("  }\n");
        let edges: Vec<String> = rule.disconnect_set().iter().map(Edge::to_string).collect();
        writeln!(out, "  disconnect {{ {} }}", edges.join(" ")).unwrap();
        out.push_str("  rhs {\n");
        write_decls(&mut out, rule.rhs(), "    ");
        out.push_str("  }\n");
        let entries: Vec<String> = rule
            .rho()
            .map()
            .iter()
            .map(|(a, b)| format!("{a} -> {b}"))
            .collect();
        writeln!(out, "  rho {{ {} }}", entries.join(", ")).unwrap();
        let pairs: Vec<String> = rule
            .redirects()
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        writeln!(out, "  redirect {{ {} }}", pairs.join(" ")).unwrap();
        out.push_str("}\n");
    }
    out
}

pub fn serialize_node_map(name: &str, map: &BTreeMap<NodeId, NodeId>) -> String {
    let entries: Vec<String> = map.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
    format!("map {name} {{ {} }}\n", entries.join(", "))
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

pub fn export_dot(graph: &Graph) -> String {
    export_dot_named("G", graph)
}

/// Graphviz text with nodes and edges in sorted order.
pub fn export_dot_named(name: &str, graph: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    for n in graph.nodes() {
        let label = match graph.label(n.as_str()) {
            Some(s) => format!("{n}:{s}"),
            None => format!("{n}:•"),
        };
        writeln!(out, "  {} [label={}];", quote(n.as_str()), quote(&label)).unwrap();
    }
    for e in graph.edges() {
        let target = graph.target(&e).expect("edge of the graph");
        writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            quote(e.source.as_str()),
            quote(target.as_str()),
            e.index
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
