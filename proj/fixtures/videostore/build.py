#!/usr/bin/env python3
"""Self-contained build for the videostore fixture.

Usage: python3 build.py <suite>   (suite: orig | tadq | nadq)

Translates the Java sources under src/main/java into Python, runs the chosen
test suite from src/test/python, and writes a JUnit-style XML report to
build/reports/. Exit codes mirror a conventional Java build:

  0  everything compiled and every test passed
  1  tests ran, at least one failed
  2  compile error (an "error:" line is printed; no report is written)

The Java subset covered is exactly what the fixture sources (and any
single-token mutation of them) need: classes with single inheritance,
fields, constructors with super() calls, methods, if/else, enhanced for,
local variables, arithmetic/bitwise/shift/relational/conditional operators,
string concatenation, new-expressions, null, this and throw.
"""
import os
import sys


class CompileError(Exception):
    def __init__(self, line, message):
        super().__init__(message)
        self.line = line
        self.message = message


# --------------------------------------------------------------------------
# tokenizer

PUNCT = [
    ">>>=", "<<=", ">>=", ">>>", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "++", "--", "->", "+", "-", "*", "/", "%", "&", "|", "^", "!", "<", ">",
    "=", "(", ")", "{", "}", "[", "]", ";", ",", ".", ":", "?", "@",
]

KEYWORDS = {
    "abstract", "boolean", "byte", "char", "class", "double", "else", "extends",
    "final", "float", "for", "if", "implements", "import", "int", "interface",
    "long", "new", "null", "package", "private", "protected", "public",
    "return", "short", "static", "super", "this", "throw", "throws", "true",
    "false", "void", "while",
}

PRIMITIVES = {"boolean", "byte", "char", "short", "int", "long", "float", "double"}


class Tok:
    __slots__ = ("kind", "text", "line")

    def __init__(self, kind, text, line):
        self.kind = kind  # 'id' | 'num' | 'str' | 'punct'
        self.text = text
        self.line = line

    def __repr__(self):
        return f"Tok({self.kind},{self.text!r})"


def tokenize(src):
    toks = []
    i, n, line = 0, len(src), 1
    while i < n:
        c = src[i]
        if c == "\n":
            line += 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            continue
        if src.startswith("//", i):
            j = src.find("\n", i)
            i = n if j < 0 else j
            continue
        if src.startswith("/*", i):
            j = src.find("*/", i + 2)
            if j < 0:
                raise CompileError(line, "unterminated comment")
            line += src.count("\n", i, j)
            i = j + 2
            continue
        if c == '"':
            j = i + 1
            while j < n and src[j] != '"':
                if src[j] == "\\":
                    j += 1
                j += 1
            if j >= n:
                raise CompileError(line, "unterminated string literal")
            toks.append(Tok("str", src[i : j + 1], line))
            i = j + 1
            continue
        if c.isdigit():
            j = i
            while j < n and (src[j].isdigit() or src[j] == "."):
                j += 1
            if j < n and src[j] in "fFdDlL":
                j += 1
            toks.append(Tok("num", src[i:j].rstrip("fFdDlL"), line))
            i = j
            continue
        if c.isalpha() or c == "_" or c == "$":
            j = i
            while j < n and (src[j].isalnum() or src[j] in "_$"):
                j += 1
            toks.append(Tok("id", src[i:j], line))
            i = j
            continue
        for p in PUNCT:
            if src.startswith(p, i):
                toks.append(Tok("punct", p, line))
                i += len(p)
                break
        else:
            raise CompileError(line, f"unexpected character {c!r}")
    return toks


# --------------------------------------------------------------------------
# expression parser -> Python source

# Operators whose Java form rejects String operands outright.
NO_STRING_OPS = {"-", "*", "/", "%", "&", "|", "^", "<<", ">>", ">>>", "<", ">", "<=", ">="}

BIN_LEVELS = [
    ["||"],
    ["&&"],
    ["|"],
    ["^"],
    ["&"],
    ["==", "!="],
    ["<", ">", "<=", ">="],
    ["<<", ">>", ">>>"],
    ["+", "-"],
    ["*", "/", "%"],
]


class ExprParser:
    def __init__(self, toks, cls):
        self.toks = toks
        self.pos = 0
        self.cls = cls  # enclosing ClassInfo, for super-calls and new

    def peek(self, k=0):
        return self.toks[self.pos + k] if self.pos + k < len(self.toks) else None

    def take(self, text=None):
        t = self.peek()
        if t is None or (text is not None and t.text != text):
            line = self.toks[-1].line if self.toks else 0
            got = t.text if t else "end of input"
            raise CompileError(t.line if t else line, f"expected {text or 'expression'}, got {got}")
        self.pos += 1
        return t

    def parse(self):
        node = self.binary(0)
        if self.pos != len(self.toks):
            raise CompileError(self.peek().line, f"unexpected token {self.peek().text!r}")
        return node

    def binary(self, level):
        if level >= len(BIN_LEVELS):
            return self.unary()
        node = self.binary(level + 1)
        while self.peek() and self.peek().kind == "punct" and self.peek().text in BIN_LEVELS[level]:
            op = self.take().text
            rhs = self.binary(level + 1)
            node = ("bin", op, node, rhs)
        return node

    def unary(self):
        t = self.peek()
        if t and t.kind == "punct" and t.text in ("-", "+", "!"):
            self.take()
            return ("un", t.text, self.unary())
        return self.postfix()

    def postfix(self):
        node = self.primary()
        while True:
            t = self.peek()
            if t and t.text == ".":
                self.take()
                name = self.take().text
                if self.peek() and self.peek().text == "(":
                    node = ("call", node, name, self.args())
                else:
                    node = ("field", node, name)
            else:
                return node

    def args(self):
        self.take("(")
        out = []
        if self.peek() and self.peek().text != ")":
            while True:
                out.append(self.binary(0))
                if self.peek() and self.peek().text == ",":
                    self.take()
                else:
                    break
        self.take(")")
        return out

    def primary(self):
        t = self.take()
        if t.kind == "num":
            return ("num", t.text)
        if t.kind == "str":
            return ("str", t.text)
        if t.text == "null":
            return ("null",)
        if t.text == "true":
            return ("bool", "True")
        if t.text == "false":
            return ("bool", "False")
        if t.text == "this":
            return ("this",)
        if t.text == "(":
            node = self.binary(0)
            self.take(")")
            return node
        if t.text == "new":
            type_name = self.take().text
            while self.peek() and self.peek().text == ".":
                self.take()
                type_name = self.take().text
            if self.peek() and self.peek().text == "<":
                depth = 0
                while True:
                    x = self.take().text
                    depth += x.count("<") - x.count(">")
                    if depth == 0:
                        break
            if self.peek() and self.peek().text == "[":
                raise CompileError(t.line, "array creation is not supported")
            return ("new", type_name, self.args())
        if t.text == "super":
            self.take(".")
            name = self.take().text
            return ("supercall", name, self.args())
        if t.kind == "id":
            if self.peek() and self.peek().text == "(":
                return ("call", None, t.text, self.args())
            return ("name", t.text)
        raise CompileError(t.line, f"unexpected token {t.text!r} in expression")


def emit(node, cls, line):
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "str":
        return node[1]
    if kind == "null":
        return "None"
    if kind == "bool":
        return node[1]
    if kind == "this":
        return "self"
    if kind == "name":
        return node[1]
    if kind == "field":
        return f"{emit(node[1], cls, line)}.{node[2]}"
    if kind == "call":
        target, name, args = node[1], node[2], node[3]
        py_args = ", ".join(emit(a, cls, line) for a in args)
        if target is None:
            return f"self.{name}({py_args})"
        return f"{emit(target, cls, line)}.{name}({py_args})"
    if kind == "supercall":
        if not cls.base:
            raise CompileError(line, "super call without a base class")
        py_args = ", ".join(emit(a, cls, line) for a in node[2])
        sep = ", " if py_args else ""
        return f"{cls.base}.{node[1]}(self{sep}{py_args})"
    if kind == "new":
        py_args = ", ".join(emit(a, cls, line) for a in node[2])
        return f"{node[1]}({py_args})"
    if kind == "un":
        op, operand = node[1], emit(node[2], cls, line)
        if op == "!":
            return f"(not {operand})"
        return f"({op}{operand})"
    if kind == "bin":
        op, lhs, rhs = node[1], node[2], node[3]
        if op in NO_STRING_OPS and (lhs[0] == "str" or rhs[0] == "str"):
            raise CompileError(line, f"bad operand types for binary operator '{op}'")
        left, right = emit(lhs, cls, line), emit(rhs, cls, line)
        if op == "+":
            return f"_jadd({left}, {right})"
        if op == "/":
            return f"_jdiv({left}, {right})"
        if op == "%":
            return f"_jmod({left}, {right})"
        if op == "&&":
            return f"({left} and {right})"
        if op == "||":
            return f"({left} or {right})"
        if op == "==":
            return f"_jeq({left}, {right})"
        if op == "!=":
            return f"(not _jeq({left}, {right}))"
        if op == ">>>":
            return f"_jushr({left}, {right})"
        return f"({left} {op} {right})"
    raise CompileError(line, f"cannot translate expression node {kind}")


def translate_expr(toks, cls):
    if not toks:
        raise CompileError(0, "empty expression")
    node = ExprParser(toks, cls).parse()
    return emit(node, cls, toks[0].line)


# --------------------------------------------------------------------------
# class translation

MODIFIERS = {"public", "private", "protected", "static", "final", "abstract"}


class ClassInfo:
    def __init__(self, name, base):
        self.name = name
        self.base = base
        self.fields = []  # (name, default python expr)
        self.lines = []   # generated python body lines


def split_statements(toks):
    """Cuts a token stream into chunks ending with ';', '{' or '}'."""
    chunks, cur = [], []
    for t in toks:
        cur.append(t)
        if t.text in (";", "{", "}"):
            chunks.append(cur)
            cur = []
    if cur:
        raise CompileError(cur[0].line, "dangling tokens at end of block")
    return chunks


def skip_type(toks, i):
    """Consumes a type starting at i; returns the index after it."""
    if i >= len(toks):
        return i
    if toks[i].kind != "id" and toks[i].text not in PRIMITIVES:
        return i
    i += 1
    while i < len(toks) and toks[i].text == ".":
        i += 2
    if i < len(toks) and toks[i].text == "<":
        depth = 0
        while i < len(toks):
            depth += toks[i].text.count("<") - toks[i].text.count(">")
            i += 1
            if depth == 0:
                break
    while i + 1 < len(toks) and toks[i].text == "[" and toks[i + 1].text == "]":
        i += 2
    return i


def looks_like_decl(toks):
    """True for `Type name = ...;` or `Type name;` statements."""
    if not toks or (toks[0].kind != "id" and toks[0].text not in PRIMITIVES):
        return False
    if toks[0].text in KEYWORDS and toks[0].text not in PRIMITIVES:
        return False
    i = skip_type(toks, 0)
    return (
        i < len(toks)
        and toks[i].kind == "id"
        and i + 1 < len(toks)
        and toks[i + 1].text in ("=", ";")
    )


def default_for(type_text):
    if type_text in ("int", "long", "short", "byte", "char"):
        return "0"
    if type_text in ("double", "float"):
        return "0.0"
    if type_text == "boolean":
        return "False"
    return "None"


def translate_block(chunks, idx, cls, out, indent):
    """Translates statements until the matching '}' chunk; returns next idx."""
    emitted = False
    pad = "    " * indent
    while idx < len(chunks):
        toks = chunks[idx]
        line = toks[0].line
        texts = [t.text for t in toks]
        if texts == ["}"]:
            if not emitted:
                out.append(pad + "pass")
            return idx + 1
        emitted = True
        idx += 1
        if texts[0] == "if":
            close = matching_paren(toks, 1)
            cond = translate_expr(toks[2:close], cls)
            if toks[-1].text != "{":
                raise CompileError(line, "if body must be a braced block")
            out.append(pad + f"if {cond}:")
            idx = translate_block(chunks, idx, cls, out, indent + 1)
        elif texts[0] == "else" and len(texts) >= 2 and texts[1] == "if":
            close = matching_paren(toks, 2)
            cond = translate_expr(toks[3:close], cls)
            out.append(pad + f"elif {cond}:")
            idx = translate_block(chunks, idx, cls, out, indent + 1)
        elif texts[0] == "else":
            out.append(pad + "else:")
            idx = translate_block(chunks, idx, cls, out, indent + 1)
        elif texts[0] == "for":
            # enhanced for only: for (Type var : expr) {
            close = matching_paren(toks, 1)
            inner = toks[2:close]
            colon = next((k for k, t in enumerate(inner) if t.text == ":"), None)
            if colon is None:
                raise CompileError(line, "only enhanced for loops are supported")
            var = inner[colon - 1].text
            seq = translate_expr(inner[colon + 1 :], cls)
            out.append(pad + f"for {var} in {seq}:")
            idx = translate_block(chunks, idx, cls, out, indent + 1)
        elif texts[0] == "while":
            close = matching_paren(toks, 1)
            cond = translate_expr(toks[2:close], cls)
            out.append(pad + f"while {cond}:")
            idx = translate_block(chunks, idx, cls, out, indent + 1)
        elif texts[0] == "return":
            if texts[-1] != ";":
                raise CompileError(line, "missing ';' after return")
            if len(toks) == 2:
                out.append(pad + "return")
            else:
                out.append(pad + "return " + translate_expr(toks[1:-1], cls))
        elif texts[0] == "throw":
            out.append(pad + "_jthrow(" + translate_expr(toks[1:-1], cls) + ")")
        elif len(texts) >= 3 and texts[-2] in ("++", "--") and texts[-1] == ";":
            lhs = translate_lvalue(toks[:-2], cls)
            op = "+" if texts[-2] == "++" else "-"
            out.append(pad + f"{lhs} = {lhs} {op} 1")
        elif texts[0] in ("++", "--") and texts[-1] == ";":
            lhs = translate_lvalue(toks[1:-1], cls)
            op = "+" if texts[0] == "++" else "-"
            out.append(pad + f"{lhs} = {lhs} {op} 1")
        elif looks_like_decl(toks):
            i = skip_type(toks, 0)
            name = toks[i].text
            if toks[i + 1].text == ";":
                out.append(pad + f"{name} = {default_for(texts[0])}")
            else:
                out.append(pad + f"{name} = " + translate_expr(toks[i + 2 : -1], cls))
        else:
            eq = assignment_index(toks)
            if eq is not None:
                lhs = translate_lvalue(toks[:eq], cls)
                rhs = translate_expr(toks[eq + 1 : -1], cls)
                out.append(pad + f"{lhs} = {rhs}")
            else:
                if texts[-1] != ";":
                    raise CompileError(line, f"unsupported statement near {texts[0]!r}")
                out.append(pad + translate_expr(toks[:-1], cls))
    raise CompileError(chunks[-1][0].line if chunks else 0, "unexpected end of block")


def matching_paren(toks, open_idx):
    if toks[open_idx].text != "(":
        raise CompileError(toks[open_idx].line, "expected '('")
    depth = 0
    for k in range(open_idx, len(toks)):
        if toks[k].text == "(":
            depth += 1
        elif toks[k].text == ")":
            depth -= 1
            if depth == 0:
                return k
    raise CompileError(toks[open_idx].line, "unbalanced parentheses")


def assignment_index(toks):
    depth = 0
    for k, t in enumerate(toks):
        if t.text in "([":
            depth += 1
        elif t.text in ")]":
            depth -= 1
        elif t.text == "=" and depth == 0:
            return k
    return None


def translate_lvalue(toks, cls):
    texts = [t.text for t in toks]
    if len(texts) == 1 and toks[0].kind == "id":
        return texts[0]
    if len(texts) == 3 and texts[0] == "this" and texts[1] == ".":
        return f"self.{texts[2]}"
    raise CompileError(toks[0].line, "unsupported assignment target")


def parse_params(toks):
    """Parameter names from the token slice between '(' and ')'."""
    names, i = [], 0
    while i < len(toks):
        while i < len(toks) and toks[i].text in ("final", "@"):
            i += 1 if toks[i].text == "final" else 2
        j = skip_type(toks, i)
        if j >= len(toks) or toks[j].kind != "id":
            raise CompileError(toks[i].line if i < len(toks) else 0, "bad parameter list")
        names.append(toks[j].text)
        i = j + 1
        if i < len(toks) and toks[i].text == ",":
            i += 1
    return names


def translate_class(toks):
    i = 0
    while toks[i].text in MODIFIERS:
        i += 1
    if toks[i].text != "class":
        raise CompileError(toks[i].line, "expected a class declaration")
    name = toks[i + 1].text
    i += 2
    base = None
    if i < len(toks) and toks[i].text == "extends":
        base = toks[i + 1].text
        i += 2
    if toks[i].text != "{":
        raise CompileError(toks[i].line, "expected '{' after class header")
    if toks[-1].text != "}":
        raise CompileError(toks[-1].line, "expected '}' closing the class")
    body = toks[i + 1 : -1]
    cls = ClassInfo(name, base)

    chunks = split_statements(body)
    idx = 0
    while idx < len(chunks):
        member = chunks[idx]
        idx += 1
        texts = [t.text for t in member]
        line = member[0].line
        k = 0
        while k < len(texts) and texts[k] in MODIFIERS:
            k += 1
        if member[-1].text == ";":
            # field declaration
            j = skip_type(member, k)
            fname = member[j].text
            if member[j + 1].text == "=":
                cls.fields.append((fname, translate_expr(member[j + 2 : -1], cls)))
            else:
                cls.fields.append((fname, default_for(texts[k])))
            continue
        if member[-1].text != "{":
            raise CompileError(line, "unsupported class member")
        # constructor or method header
        paren = next((p for p in range(k, len(member)) if member[p].text == "("), None)
        if paren is None:
            raise CompileError(line, "malformed member declaration")
        close = matching_paren(member, paren)
        header_name = member[paren - 1].text
        params = parse_params(member[paren + 1 : close])
        is_ctor = paren - 1 == k and header_name == name
        # collect the body chunks up to the matching close brace
        depth, body_chunks = 1, []
        while idx < len(chunks) and depth > 0:
            c = chunks[idx]
            if c[-1].text == "{":
                depth += 1
            elif c[-1].text == "}":
                depth -= 1
            body_chunks.append(c)
            idx += 1
        if depth != 0:
            raise CompileError(line, "unbalanced braces in member body")

        out = []
        if is_ctor:
            out.append(f"    def __init__(self{''.join(', ' + p for p in params)}):")
            start = 0
            if (
                body_chunks
                and body_chunks[0][0].text == "super"
                and body_chunks[0][1].text == "("
            ):
                sup = body_chunks[0]
                close_p = matching_paren(sup, 1)
                args = []
                depth_a, cur = 0, []
                for t in sup[2:close_p]:
                    if t.text == "," and depth_a == 0:
                        args.append(cur)
                        cur = []
                        continue
                    if t.text in "([":
                        depth_a += 1
                    elif t.text in ")]":
                        depth_a -= 1
                    cur.append(t)
                if cur:
                    args.append(cur)
                py_args = ", ".join(translate_expr(a, cls) for a in args)
                sep = ", " if py_args else ""
                out.append(f"        {base}.__init__(self{sep}{py_args})")
                start = 1
            out.append(f"        self._init_fields_{name}()")
            sub = []
            end = translate_block(body_chunks + [], start, cls, sub, 2)
            if end != len(body_chunks):
                raise CompileError(line, "trailing tokens after constructor body")
            out.extend(sub if sub else ["        pass"])
        else:
            out.append(f"    def {header_name}(self{''.join(', ' + p for p in params)}):")
            sub = []
            end = translate_block(body_chunks, 0, cls, sub, 2)
            if end != len(body_chunks):
                raise CompileError(line, "trailing tokens after method body")
            out.extend(sub if sub else ["        pass"])
        cls.lines.extend(out)
    return cls


def render_class(cls):
    head = f"class {cls.name}({cls.base}):" if cls.base else f"class {cls.name}:"
    lines = [head]
    lines.append(f"    def _init_fields_{cls.name}(self):")
    if cls.fields:
        for fname, default in cls.fields:
            lines.append(f"        self.{fname} = {default}")
    else:
        lines.append("        pass")
    if not any(l.lstrip().startswith("def __init__") for l in cls.lines) and not cls.base:
        lines.append("    def __init__(self):")
        lines.append(f"        self._init_fields_{cls.name}()")
    lines.extend(cls.lines)
    return "\n".join(lines)


def strip_preamble(toks):
    """Drops package and import statements."""
    out, i = [], 0
    while i < len(toks):
        if toks[i].text in ("package", "import"):
            while i < len(toks) and toks[i].text != ";":
                i += 1
            i += 1
            continue
        out.append(toks[i])
        i += 1
    return out


# --------------------------------------------------------------------------
# runtime support injected into the transpiled module

RUNTIME = '''
class JavaThrowable(Exception):
    def __init__(self, message=None):
        super().__init__(message)
        self.message = message
    def getMessage(self):
        return self.message

class IllegalArgumentException(JavaThrowable):
    pass

class NullPointerException(JavaThrowable):
    pass

class ArrayList:
    def __init__(self):
        self._items = []
    def add(self, x):
        self._items.append(x)
        return True
    def size(self):
        return len(self._items)
    def get(self, i):
        return self._items[i]
    def __iter__(self):
        return iter(self._items)

def jstr(v):
    if v is None:
        return "null"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)

def _jadd(a, b):
    if isinstance(a, str) or isinstance(b, str):
        return jstr(a) + jstr(b)
    return a + b

def _jdiv(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q = abs(a) // abs(b)
        return q if (a >= 0) == (b >= 0) else -q
    return a / b

def _jmod(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a - _jdiv(a, b) * b
    import math
    return math.fmod(a, b)

def _jushr(a, b):
    return (a & 0xFFFFFFFF) >> b

def _jeq(a, b):
    if a is None or b is None:
        return a is b
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return a == b
    return a is b

def _jthrow(x):
    if x is None:
        raise NullPointerException("throw of null")
    raise x
'''


# --------------------------------------------------------------------------
# test runner

def xml_escape(s):
    return (
        s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


def run_suite(suite_name, namespace):
    suite_path = os.path.join("src", "test", "python", f"test_{suite_name}.py")
    if not os.path.exists(suite_path):
        print(f"{suite_path}: error: no such test suite")
        return 2
    suite_globals = dict(namespace)

    def fail(msg="test failed"):
        raise AssertionError(msg)

    suite_globals["fail"] = fail
    with open(suite_path) as f:
        code = f.read()
    exec(compile(code, suite_path, "exec"), suite_globals)

    classname = suite_globals.get("CLASSNAME", f"videostore.{suite_name.capitalize()}Suite")
    tests = sorted(
        (
            (fn.__code__.co_firstlineno, tname, fn)
            for tname, fn in suite_globals.items()
            if tname.startswith("test") and callable(fn)
        ),
    )

    cases, failures, errors = [], 0, 0
    for _, tname, fn in tests:
        try:
            fn()
            cases.append(f'  <testcase classname="{classname}" name="{tname}"/>')
        except AssertionError as e:
            failures += 1
            cases.append(
                f'  <testcase classname="{classname}" name="{tname}">\n'
                f'    <failure message="{xml_escape(str(e))}"/>\n'
                f"  </testcase>"
            )
        except Exception as e:  # noqa: BLE001 - any other throw is a test error
            errors += 1
            cases.append(
                f'  <testcase classname="{classname}" name="{tname}">\n'
                f'    <error type="{xml_escape(type(e).__name__)}"'
                f' message="{xml_escape(str(e))}"/>\n'
                f"  </testcase>"
            )

    os.makedirs(os.path.join("build", "reports"), exist_ok=True)
    report = os.path.join("build", "reports", f"TEST-{classname}.xml")
    with open(report, "w") as f:
        f.write(
            f'<testsuite name="{classname}" tests="{len(tests)}"'
            f' failures="{failures}" errors="{errors}">\n'
        )
        f.write("\n".join(cases))
        f.write("\n</testsuite>\n")
    return 1 if failures or errors else 0


def main():
    if len(sys.argv) != 2:
        print("usage: python3 build.py <orig|tadq|nadq>")
        return 2
    src_dir = os.path.join("src", "main", "java", "videostore")
    classes = []
    for fname in sorted(os.listdir(src_dir)):
        if not fname.endswith(".java"):
            continue
        path = os.path.join(src_dir, fname)
        with open(path) as f:
            source = f.read()
        try:
            classes.append(translate_class(strip_preamble(tokenize(source))))
        except CompileError as e:
            print(f"{path}:{e.line}: error: {e.message}")
            return 2
    # base classes must be defined before their subclasses
    pieces, emitted = [RUNTIME], set()
    pending = list(classes)
    while pending:
        progressed = False
        for cls in list(pending):
            if cls.base is None or cls.base in emitted:
                pieces.append(render_class(cls))
                emitted.add(cls.name)
                pending.remove(cls)
                progressed = True
        if not progressed:
            print(f"error: unresolved base class for {pending[0].name}")
            return 2
    module_source = "\n\n".join(pieces)
    namespace = {}
    try:
        exec(compile(module_source, "<videostore>", "exec"), namespace)
    except SyntaxError as e:
        print(f"<videostore>:{e.lineno}: error: generated code is invalid: {e.msg}")
        return 2
    return run_suite(sys.argv[1], namespace)


if __name__ == "__main__":
    sys.exit(main())
