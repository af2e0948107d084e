"""Tour of the builtin object types.

Builds each type in the zoo, shows a few transitions, and checks which
types admit a true read operation.
"""

from rcons import apply, builtin_type, is_readable, type_to_json

ZOO = ["register:2", "tas", "cas:3", "tnn:5,2"]


def main():
    for spec in ZOO:
        obj = builtin_type(spec)
        read = is_readable(obj)
        print(f"{obj.name}: {len(obj.values)} values, "
              f"{len(obj.operations)} operations, "
              f"readable via {read}" if read else
              f"{obj.name}: {len(obj.values)} values, "
              f"{len(obj.operations)} operations, not readable")

    chain = builtin_type("tnn:5,2")
    print("\nWalking the 5-chain from its start value:")
    value = "s"
    for op in ["op_1", "op_0", "op_R", "op_0", "op_R"]:
        value, resp = apply(chain, value, op)
        print(f"  {op}: response {resp!r}, value now {value!r}")
    print("\nThe recovery read is safe for the first two chain values, "
          "then it kills the object.")

    print("\nJSON form of the smallest chain (tnn:2,1):")
    print(type_to_json(builtin_type("tnn:2,1")))


if __name__ == "__main__":
    main()
