"""
Script Parser - Tokenizer, recursive-descent parser, pretty-printer and
session evaluator for .ck scripts

Grammar (statements end with ';' or a newline outside brackets):

    ring NAME = GF(INT)[NAME, ...] [order=grevlex|lex|elim(INT)]
    quotient NAME = NAME / (expr, ...)
    ideal NAME = (expr, ...)
    module NAME = coker [[expr, ...]; [expr, ...]; ...]
    params NAME = {J1=IDEAL, m=INT, x=[expr, ...], a2=expr, a3=expr, u=expr, K1=IDEAL, sat=IDEAL}
    check COMMAND key=value ...

    expr  := term {('+'|'-') term}
    term  := unary {'*' unary}
    unary := '-' unary | power
    power := atom ['^' INT]
    atom  := INT | NAME | '(' expr ')'
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from constants import ORDER_ELIMINATION, ORDER_GREVLEX, ORDER_LEX, ORDER_NAMES
from error_handler import CharacteristicMismatch, ScriptSyntaxError, UndeclaredIdentifier
from field_poly import MonomialOrder, Polynomial, PolynomialRing, PrimeField
from groebner import Ideal
from ideal_algebra import QuotientRingSpec
from resolutions import PresentedModule

KEYWORDS = ('ring', 'quotient', 'ideal', 'module', 'params', 'check')
PARAM_KEYS = ('J1', 'm', 'x', 'a2', 'a3', 'u', 'K1', 'sat')
_PUNCT = '=()[]{},;+-*^/'
_OPEN = {'(': ')', '[': ']', '{': '}'}


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, OP, NEWLINE, EOF
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    """
    Split script text into tokens. NEWLINE tokens are only produced
    outside brackets, so expressions may span lines.

    Raises:
        ScriptSyntaxError: unknown character or unbalanced bracket
    """
    tokens: List[Token] = []
    stack: List[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == '#':
            while i < n and text[i] != '\n':
                i += 1
            continue
        if ch == '\n':
            if not stack:
                tokens.append(Token('NEWLINE', '\n', line, col))
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token('INT', text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == '_':
            j = i
            while j < n and (text[j].isalnum() or text[j] == '_'):
                j += 1
            tokens.append(Token('NAME', text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if text.startswith('**', i):
            tokens.append(Token('OP', '^', line, start_col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT:
            tok = Token('OP', ch, line, start_col)
            if ch in _OPEN:
                stack.append(tok)
            elif ch in _OPEN.values():
                if not stack or _OPEN[stack[-1].text] != ch:
                    raise ScriptSyntaxError(f"unexpected '{ch}'", line, start_col)
                stack.pop()
            tokens.append(tok)
            i += 1
            col += 1
            continue
        raise ScriptSyntaxError(f"unexpected character {ch!r}", line, start_col)
    if stack:
        opener = stack[-1]
        raise ScriptSyntaxError(f"unclosed '{opener.text}'", opener.line, opener.column)
    tokens.append(Token('EOF', '', line, col))
    return tokens


# -- AST -----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: 'Expr'
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: 'Expr'
    right: 'Expr'
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: 'Expr'
    exponent: int
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


Expr = Union[Num, Var, Neg, BinOp, Pow]


@dataclass(frozen=True)
class IdealRef:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class IdealLiteral:
    generators: Tuple[Expr, ...]


@dataclass(frozen=True)
class ExprList:
    items: Tuple[Expr, ...]


ParamValue = Union[Expr, IdealRef, IdealLiteral, ExprList]


@dataclass(frozen=True)
class RingDecl:
    name: str
    p: int
    variables: Tuple[str, ...]
    order: str = ORDER_GREVLEX
    block: int = 0
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class QuotientDecl:
    name: str
    ring: str
    relations: Tuple[Expr, ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class IdealDecl:
    name: str
    generators: Tuple[Expr, ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    rows: Tuple[Tuple[Expr, ...], ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ParamsDecl:
    name: str
    entries: Tuple[Tuple[str, ParamValue], ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CheckStmt:
    command: str
    args: Tuple[Tuple[str, str], ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


Statement = Union[RingDecl, QuotientDecl, IdealDecl, ModuleDecl, ParamsDecl, CheckStmt]


@dataclass(frozen=True)
class SessionScript:
    statements: Tuple[Statement, ...]


# -- parser --------------------------------------------------------------------

class Parser:
    """Recursive-descent parser over a token list"""

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != 'EOF':
            self.pos += 1
        return tok

    def _error(self, message: str, tok: Optional[Token] = None) -> ScriptSyntaxError:
        tok = tok or self.current
        found = 'end of input' if tok.kind == 'EOF' else repr(tok.text)
        return ScriptSyntaxError(f"{message}, found {found}", tok.line, tok.column)

    def _at(self, text: str) -> bool:
        return self.current.kind in ('OP', 'NAME') and self.current.text == text

    def _expect(self, text: str) -> Token:
        if not self._at(text):
            raise self._error(f"expected '{text}'")
        return self._advance()

    def _expect_kind(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            raise self._error(f"expected {what}")
        return self._advance()

    def _skip_separators(self) -> None:
        while self.current.kind == 'NEWLINE' or self._at(';'):
            self._advance()

    def parse_script(self) -> SessionScript:
        statements = []
        self._skip_separators()
        while self.current.kind != 'EOF':
            statements.append(self.parse_statement())
            if not (self.current.kind in ('NEWLINE', 'EOF') or self._at(';')):
                raise self._error("expected end of statement")
            self._skip_separators()
        return SessionScript(tuple(statements))

    def parse_statement(self) -> Statement:
        tok = self.current
        if tok.kind != 'NAME' or tok.text not in KEYWORDS:
            raise self._error(f"expected one of {', '.join(KEYWORDS)}")
        return getattr(self, f"_parse_{tok.text}")()

    def _parse_ring(self) -> RingDecl:
        start = self._advance()
        name = self._expect_kind('NAME', 'ring name').text
        self._expect('=')
        gf = self._expect_kind('NAME', "'GF'")
        if gf.text != 'GF':
            raise self._error("expected 'GF'", gf)
        self._expect('(')
        p = int(self._expect_kind('INT', 'characteristic').text)
        self._expect(')')
        self._expect('[')
        variables = [self._expect_kind('NAME', 'variable name').text]
        while self._at(','):
            self._advance()
            variables.append(self._expect_kind('NAME', 'variable name').text)
        self._expect(']')
        order, block = ORDER_GREVLEX, 0
        if self._at('order'):
            self._advance()
            self._expect('=')
            order_tok = self._expect_kind('NAME', 'monomial order')
            order = order_tok.text
            if order not in ORDER_NAMES:
                raise self._error(f"unknown monomial order '{order}'", order_tok)
            if order == ORDER_ELIMINATION:
                self._expect('(')
                block = int(self._expect_kind('INT', 'block size').text)
                self._expect(')')
        return RingDecl(name, p, tuple(variables), order, block, start.line, start.column)

    def _parse_quotient(self) -> QuotientDecl:
        start = self._advance()
        name = self._expect_kind('NAME', 'quotient name').text
        self._expect('=')
        ring = self._expect_kind('NAME', 'ring name').text
        self._expect('/')
        relations = self._paren_list()
        return QuotientDecl(name, ring, relations, start.line, start.column)

    def _parse_ideal(self) -> IdealDecl:
        start = self._advance()
        name = self._expect_kind('NAME', 'ideal name').text
        self._expect('=')
        return IdealDecl(name, self._paren_list(), start.line, start.column)

    def _parse_module(self) -> ModuleDecl:
        start = self._advance()
        name = self._expect_kind('NAME', 'module name').text
        self._expect('=')
        self._expect('coker')
        self._expect('[')
        rows = [self._bracket_list()]
        while self._at(';'):
            self._advance()
            rows.append(self._bracket_list())
        self._expect(']')
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ScriptSyntaxError("module rows have different lengths", start.line, start.column)
        return ModuleDecl(name, tuple(rows), start.line, start.column)

    def _parse_params(self) -> ParamsDecl:
        start = self._advance()
        name = self._expect_kind('NAME', 'params name').text
        self._expect('=')
        self._expect('{')
        entries = []
        while True:
            key_tok = self._expect_kind('NAME', 'parameter key')
            if key_tok.text not in PARAM_KEYS:
                raise self._error(f"unknown parameter '{key_tok.text}'", key_tok)
            self._expect('=')
            entries.append((key_tok.text, self._param_value(key_tok.text)))
            if self._at(','):
                self._advance()
                continue
            break
        self._expect('}')
        keys = [k for k, _ in entries]
        if len(set(keys)) != len(keys):
            raise ScriptSyntaxError("duplicate parameter key", start.line, start.column)
        return ParamsDecl(name, tuple(entries), start.line, start.column)

    def _param_value(self, key: str) -> ParamValue:
        if key in ('J1', 'K1', 'sat'):
            if self._at('('):
                return IdealLiteral(self._paren_list())
            tok = self._expect_kind('NAME', 'ideal name or (generators)')
            return IdealRef(tok.text, tok.line, tok.column)
        if key == 'm':
            tok = self._expect_kind('INT', 'integer')
            return Num(int(tok.text), tok.line, tok.column)
        if key == 'x':
            return ExprList(self._bracket_list())
        return self.parse_expr()

    def _parse_check(self) -> CheckStmt:
        start = self._advance()
        command = self._dashed_name('command')
        args = []
        while self.current.kind == 'NAME':
            key = self._dashed_name('argument name')
            self._expect('=')
            args.append((key, self._check_value()))
        return CheckStmt(command, tuple(args), start.line, start.column)

    def _dashed_name(self, what: str) -> str:
        parts = [self._expect_kind('NAME', what).text]
        while self._at('-') and self.tokens[self.pos + 1].kind == 'NAME':
            self._advance()
            parts.append(self._advance().text)
        return '-'.join(parts)

    def _check_value(self) -> str:
        if self._at('['):
            return ','.join(format_expr(e) for e in self._bracket_list())
        return format_expr(self.parse_expr())

    def _paren_list(self) -> Tuple[Expr, ...]:
        self._expect('(')
        items = self._expr_items(')')
        self._expect(')')
        return items

    def _bracket_list(self) -> Tuple[Expr, ...]:
        self._expect('[')
        items = self._expr_items(']')
        self._expect(']')
        return items

    def _expr_items(self, closer: str) -> Tuple[Expr, ...]:
        if self._at(closer):
            return ()
        items = [self.parse_expr()]
        while self._at(','):
            self._advance()
            items.append(self.parse_expr())
        return tuple(items)

    # expressions
    def parse_expr(self) -> Expr:
        left = self._parse_term()
        while self._at('+') or self._at('-'):
            op = self._advance()
            right = self._parse_term()
            left = BinOp(op.text, left, right, op.line, op.column)
        return left

    def _parse_term(self) -> Expr:
        left = self._parse_unary()
        while self._at('*'):
            op = self._advance()
            right = self._parse_unary()
            left = BinOp('*', left, right, op.line, op.column)
        return left

    def _parse_unary(self) -> Expr:
        if self._at('-'):
            op = self._advance()
            return Neg(self._parse_unary(), op.line, op.column)
        return self._parse_power()

    def _parse_power(self) -> Expr:
        base = self._parse_atom()
        if self._at('^'):
            op = self._advance()
            exponent = int(self._expect_kind('INT', 'integer exponent').text)
            return Pow(base, exponent, op.line, op.column)
        return base

    def _parse_atom(self) -> Expr:
        tok = self.current
        if tok.kind == 'INT':
            self._advance()
            return Num(int(tok.text), tok.line, tok.column)
        if tok.kind == 'NAME':
            self._advance()
            return Var(tok.text, tok.line, tok.column)
        if self._at('('):
            self._advance()
            inner = self.parse_expr()
            self._expect(')')
            return inner
        raise self._error("expected a number, variable or '('")


# -- pretty-printer ------------------------------------------------------------

def _precedence(expr: Expr) -> int:
    if isinstance(expr, BinOp):
        return 1 if expr.op in '+-' else 2
    if isinstance(expr, Neg):
        return 3
    if isinstance(expr, Pow):
        return 4
    return 5


def format_expr(expr: Expr) -> str:
    """Minimal-parenthesis rendering; parsing the output gives back expr"""
    if isinstance(expr, Num):
        return str(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Neg):
        inner = format_expr(expr.operand)
        return f"-{inner}" if _precedence(expr.operand) >= 3 else f"-({inner})"
    if isinstance(expr, Pow):
        base = format_expr(expr.base)
        if _precedence(expr.base) < 5:
            base = f"({base})"
        return f"{base}^{expr.exponent}"
    prec = _precedence(expr)
    left = format_expr(expr.left)
    if _precedence(expr.left) < prec:
        left = f"({left})"
    right = format_expr(expr.right)
    if _precedence(expr.right) <= prec:
        right = f"({right})"
    sep = '*' if expr.op == '*' else f" {expr.op} "
    return f"{left}{sep}{right}"


def _format_list(items: Sequence[Expr]) -> str:
    return ', '.join(format_expr(e) for e in items)


def _format_value(value: ParamValue) -> str:
    if isinstance(value, IdealRef):
        return value.name
    if isinstance(value, IdealLiteral):
        return f"({_format_list(value.generators)})"
    if isinstance(value, ExprList):
        return f"[{_format_list(value.items)}]"
    return format_expr(value)


def format_statement(stmt: Statement) -> str:
    if isinstance(stmt, RingDecl):
        order = f"{stmt.order}({stmt.block})" if stmt.order == ORDER_ELIMINATION else stmt.order
        return f"ring {stmt.name} = GF({stmt.p})[{', '.join(stmt.variables)}] order={order};"
    if isinstance(stmt, QuotientDecl):
        return f"quotient {stmt.name} = {stmt.ring} / ({_format_list(stmt.relations)});"
    if isinstance(stmt, IdealDecl):
        return f"ideal {stmt.name} = ({_format_list(stmt.generators)});"
    if isinstance(stmt, ModuleDecl):
        rows = '; '.join(f"[{_format_list(row)}]" for row in stmt.rows)
        return f"module {stmt.name} = coker [{rows}];"
    if isinstance(stmt, ParamsDecl):
        entries = ', '.join(f"{k}={_format_value(v)}" for k, v in stmt.entries)
        return f"params {stmt.name} = {{{entries}}};"
    args = ''.join(f" {k}={v if ',' not in v else '[' + v + ']'}" for k, v in stmt.args)
    return f"check {stmt.command}{args};"


def format_script(script: SessionScript) -> str:
    return '\n'.join(format_statement(s) for s in script.statements) + '\n'


# -- static resolution -----------------------------------------------------------

@dataclass
class _Scope:
    """Names visible while resolving: kind, characteristic, ring variables"""
    kinds: Dict[str, str] = field(default_factory=dict)
    contexts: Dict[str, str] = field(default_factory=dict)
    characteristic: Dict[str, int] = field(default_factory=dict)
    variables: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    current: Optional[str] = None


def _expr_vars(expr: Expr) -> List[Var]:
    if isinstance(expr, Var):
        return [expr]
    if isinstance(expr, Neg):
        return _expr_vars(expr.operand)
    if isinstance(expr, Pow):
        return _expr_vars(expr.base)
    if isinstance(expr, BinOp):
        return _expr_vars(expr.left) + _expr_vars(expr.right)
    return []


def _check_exprs(scope: _Scope, exprs: Sequence[Expr], stmt: Statement) -> None:
    if scope.current is None:
        raise UndeclaredIdentifier("no ring declared before this statement", stmt.line, stmt.column)
    allowed = scope.variables[scope.current]
    for expr in exprs:
        for var in _expr_vars(expr):
            if var.name not in allowed:
                raise UndeclaredIdentifier(
                    f"'{var.name}' is not a variable of {scope.current}", var.line, var.column)


def _check_ideal_ref(scope: _Scope, ref: IdealRef) -> None:
    if scope.kinds.get(ref.name) != 'ideal':
        raise UndeclaredIdentifier(f"ideal '{ref.name}' is not declared", ref.line, ref.column)
    owner = scope.contexts[ref.name]
    if scope.characteristic[owner] != scope.characteristic[scope.current]:
        raise CharacteristicMismatch(
            f"ideal '{ref.name}' lives over GF({scope.characteristic[owner]})", ref.line, ref.column)
    if scope.variables[owner] != scope.variables[scope.current]:
        raise UndeclaredIdentifier(f"ideal '{ref.name}' belongs to another ring", ref.line, ref.column)


def resolve_script(script: SessionScript) -> SessionScript:
    """
    Checks declaration-before-use, single assignment, ring variables and
    characteristics

    Raises:
        UndeclaredIdentifier, CharacteristicMismatch, ScriptSyntaxError
    """
    scope = _Scope()
    for stmt in script.statements:
        if isinstance(stmt, CheckStmt):
            continue
        if stmt.name in scope.kinds:
            raise ScriptSyntaxError(f"'{stmt.name}' is already declared", stmt.line, stmt.column)
        if isinstance(stmt, RingDecl):
            if len(set(stmt.variables)) != len(stmt.variables):
                raise ScriptSyntaxError("duplicate variable names", stmt.line, stmt.column)
            scope.characteristic[stmt.name] = stmt.p
            scope.variables[stmt.name] = stmt.variables
            scope.kinds[stmt.name] = 'ring'
            scope.current = stmt.name
            continue
        if isinstance(stmt, QuotientDecl):
            if scope.kinds.get(stmt.ring) not in ('ring', 'quotient'):
                raise UndeclaredIdentifier(f"ring '{stmt.ring}' is not declared", stmt.line, stmt.column)
            scope.current = stmt.ring
            _check_exprs(scope, stmt.relations, stmt)
            scope.characteristic[stmt.name] = scope.characteristic[stmt.ring]
            scope.variables[stmt.name] = scope.variables[stmt.ring]
            scope.kinds[stmt.name] = 'quotient'
            scope.current = stmt.name
            continue
        if scope.current is None:
            raise UndeclaredIdentifier("no ring declared before this statement", stmt.line, stmt.column)
        if isinstance(stmt, IdealDecl):
            _check_exprs(scope, stmt.generators, stmt)
        elif isinstance(stmt, ModuleDecl):
            _check_exprs(scope, [e for row in stmt.rows for e in row], stmt)
        elif isinstance(stmt, ParamsDecl):
            keys = {k for k, _ in stmt.entries}
            missing = {'J1', 'm', 'x'} - keys
            if missing:
                raise ScriptSyntaxError(f"params missing {sorted(missing)}", stmt.line, stmt.column)
            for _, value in stmt.entries:
                if isinstance(value, IdealRef):
                    _check_ideal_ref(scope, value)
                elif isinstance(value, IdealLiteral):
                    _check_exprs(scope, value.generators, stmt)
                elif isinstance(value, ExprList):
                    _check_exprs(scope, value.items, stmt)
                elif not isinstance(value, Num):
                    _check_exprs(scope, [value], stmt)
        scope.kinds[stmt.name] = stmt.__class__.__name__[:-4].lower()
        scope.contexts[stmt.name] = scope.current
    return script


def parse_script(text: str) -> SessionScript:
    """
    Parse and resolve a script

    Raises:
        ScriptSyntaxError, UndeclaredIdentifier, CharacteristicMismatch
    """
    return resolve_script(Parser(tokenize(text)).parse_script())


# -- evaluation ------------------------------------------------------------------

def eval_expr(expr: Expr, ring: PolynomialRing) -> Polynomial:
    if isinstance(expr, Num):
        return ring.constant(expr.value)
    if isinstance(expr, Var):
        if expr.name not in ring.variables:
            raise UndeclaredIdentifier(f"'{expr.name}' is not a variable of {ring}", expr.line, expr.column)
        return ring.gen(expr.name)
    if isinstance(expr, Neg):
        return -eval_expr(expr.operand, ring)
    if isinstance(expr, Pow):
        return eval_expr(expr.base, ring) ** expr.exponent
    left, right = eval_expr(expr.left, ring), eval_expr(expr.right, ring)
    if expr.op == '+':
        return left + right
    if expr.op == '-':
        return left - right
    return left * right


def parse_expression(text: str) -> Expr:
    parser = Parser(tokenize(text))
    while parser.current.kind == 'NEWLINE':
        parser._advance()
    expr = parser.parse_expr()
    while parser.current.kind == 'NEWLINE':
        parser._advance()
    if parser.current.kind != 'EOF':
        raise parser._error("unexpected text after expression")
    return expr


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    return eval_expr(parse_expression(text), ring)


def parse_polynomial_list(text: str, ring: PolynomialRing) -> List[Polynomial]:
    """Comma-separated polynomials, optionally wrapped in (..) or [..]"""
    parser = Parser([t for t in tokenize(text) if t.kind != 'NEWLINE'])
    if parser.current.kind == 'EOF':
        return []
    if parser._at('(') or parser._at('['):
        start = parser.pos
        try:
            items = parser._paren_list() if parser._at('(') else parser._bracket_list()
            if parser.current.kind == 'EOF':
                return [eval_expr(e, ring) for e in items]
        except ScriptSyntaxError:
            pass
        parser.pos = start
    items = parser._expr_items('')
    if parser.current.kind != 'EOF':
        raise parser._error("expected ','")
    return [eval_expr(e, ring) for e in items]


class Session:
    """
    Objects built from a script. Ideals and modules remember the ring
    context (a QuotientRingSpec) they were declared in.
    """

    def __init__(self):
        self.contexts: Dict[str, QuotientRingSpec] = {}
        self.ideals: Dict[str, Tuple[Ideal, QuotientRingSpec]] = {}
        self.modules: Dict[str, Tuple[PresentedModule, QuotientRingSpec]] = {}
        self.params: Dict[str, 'SuitableParams'] = {}
        self.checks: List[CheckStmt] = []
        self.current: Optional[QuotientRingSpec] = None

    @classmethod
    def from_script(cls, script: SessionScript) -> 'Session':
        session = cls()
        for stmt in script.statements:
            session.execute(stmt)
        return session

    @classmethod
    def from_text(cls, text: str) -> 'Session':
        return cls.from_script(parse_script(text))

    @property
    def ring(self) -> PolynomialRing:
        if self.current is None:
            raise UndeclaredIdentifier("no ring declared")
        return self.current.ambient

    def execute(self, stmt: Statement) -> None:
        if isinstance(stmt, RingDecl):
            order = {
                ORDER_GREVLEX: MonomialOrder.grevlex,
                ORDER_LEX: MonomialOrder.lex,
            }.get(stmt.order)
            mono = order() if order else MonomialOrder.elimination(stmt.block)
            ring = PolynomialRing(PrimeField(stmt.p), stmt.variables, mono)
            self.current = QuotientRingSpec(ring, name=stmt.name)
            self.contexts[stmt.name] = self.current
        elif isinstance(stmt, QuotientDecl):
            base = self.contexts[stmt.ring]
            relations = [eval_expr(e, base.ambient) for e in stmt.relations]
            self.current = QuotientRingSpec(base.ambient, base.ideal(relations), name=stmt.name)
            self.contexts[stmt.name] = self.current
        elif isinstance(stmt, IdealDecl):
            ring = self.ring
            self.ideals[stmt.name] = (Ideal(ring, [eval_expr(e, ring) for e in stmt.generators]), self.current)
        elif isinstance(stmt, ModuleDecl):
            ring = self.ring
            rows = [[eval_expr(e, ring) for e in row] for row in stmt.rows]
            module = PresentedModule.from_rows(ring, rows).over_quotient(self.current)
            self.modules[stmt.name] = (module, self.current)
        elif isinstance(stmt, ParamsDecl):
            self.params[stmt.name] = self._build_params(stmt)
        else:
            self.checks.append(stmt)

    def _ideal_value(self, value: ParamValue) -> Ideal:
        if isinstance(value, IdealRef):
            return self.ideal(value.name)
        return Ideal(self.ring, [eval_expr(e, self.ring) for e in value.generators])

    def _build_params(self, stmt: ParamsDecl) -> 'SuitableParams':
        from frobenius_invariants import SuitableParams
        values = dict(stmt.entries)
        ring = self.ring

        def poly(key: str) -> Optional[Polynomial]:
            return eval_expr(values[key], ring) if key in values else None

        return SuitableParams(
            R=self.current,
            J1=self._ideal_value(values['J1']),
            m=values['m'].value,
            x=tuple(eval_expr(e, ring) for e in values['x'].items),
            a2=poly('a2'),
            a3=poly('a3'),
            u=poly('u'),
            K1=self._ideal_value(values['K1']) if 'K1' in values else None,
            sat=self._ideal_value(values['sat']) if 'sat' in values else None,
            name=stmt.name,
        )

    def ideal(self, name: str) -> Ideal:
        if name not in self.ideals:
            raise UndeclaredIdentifier(f"ideal '{name}' is not declared")
        return self.ideals[name][0]

    def ideal_context(self, name: str) -> QuotientRingSpec:
        self.ideal(name)
        return self.ideals[name][1]

    def module(self, name: str) -> Tuple[PresentedModule, QuotientRingSpec]:
        if name not in self.modules:
            raise UndeclaredIdentifier(f"module '{name}' is not declared")
        return self.modules[name]

    def suitable(self, name: str) -> 'SuitableParams':
        if name not in self.params:
            raise UndeclaredIdentifier(f"params '{name}' is not declared")
        return self.params[name]
