def calc(jjw: list[int] ) -> int:
    # Accumulate the values that match the condition
    tot  = 0
    for i in range(len(jjw)):
        if jjw[i] % 4 == 0 and jjw[i] > 0:
            tot += jjw[i]

    return tot

def f() -> None:
    # Read the input
    n = int(input())
    jjw = list(map(int,input().split()))
    jb2 = calc(jjw)
    # Output the answer
    print(jb2)

def lb(a, t):
    l = 0
    r = len(a)
    while l < r:
        m = (l + r) // 2
        if a[m] < t:
            l = m + 1
        else:
            r = m
    return l


def solve():
    n = int(input())
    a = list(map(int, input().split()))
    q = int(input())
    for i in range(q):
        t = int(input())
        print(lb(a, t))


f()
solve()
