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


def kadane(a):
    mx = a[0]
    cur = 0
    for i in range(len(a)):
        cur += a[i]
        if cur > mx:
            mx = cur
        if cur < 0:
            cur = 0
    return mx


def solve2():
    n = int(input())
    a = list(map(int, input().split()))
    print(kadane(a))


solve()
solve2()
