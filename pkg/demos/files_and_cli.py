"""
The network file format and the command line
============================================
"""

from pathlib import Path
from tempfile import TemporaryDirectory

from beliefnet import parse_network, serialize_network
from beliefnet.cli import run

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

# the grammar in one glance: header, variables, one cpt block per
# variable, one row per parent assignment
text = """\
network coin_bias
variable Bias : fair, loaded
variable Flip : heads, tails
cpt Bias
: 0.9, 0.1
cpt Flip | Bias
fair : 0.5, 0.5
loaded : 0.95, 0.05
"""

net = parse_network(text)
print("parsed", net.name, "with", len(net.variables), "variables")

# serialization is canonical: full precision, fixed ordering, so a
# parse/serialize loop is a fixed point
canon = serialize_network(net)
print(canon)
assert serialize_network(parse_network(canon)) == canon

# the same operations are exposed as subcommands; run() is what the
# installed `beliefnet` script calls
serial = str(FIXTURES / "serial.bn")
print("$ beliefnet query serial.bn --target Z --evidence X=true")
run(["query", serial, "--target", "Z", "--evidence", "X=true"])

print("\n$ beliefnet dsep serial.bn X Z --given Y")
run(["dsep", serial, "X", "Z", "--given", "Y"])

print("\n$ beliefnet cutset sprinkler.bn")
run(["cutset", str(FIXTURES / "sprinkler.bn")])

print("\n$ beliefnet joint serial.bn --assign X=true,Y=true,Z=true")
run(["joint", serial, "--assign", "X=true,Y=true,Z=true"])

# validate flags problems without crashing the caller: exit code 1
# and one line per violation on stderr
with TemporaryDirectory() as tmp:
    bad = Path(tmp) / "broken.bn"
    bad.write_text("network broken\nvariable A : a, b\ncpt A\n: 0.9, 0.6\n")
    print("\n$ beliefnet validate broken.bn")
    code = run(["validate", str(bad)])
    print("exit code:", code)
