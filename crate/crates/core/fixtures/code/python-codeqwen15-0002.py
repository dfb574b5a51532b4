def collatz_steps(num):
    """Number of Collatz steps needed to reach one."""
    if num <= 0:
        return 0
    steps = 0
    while num != 1:
        if num % 2 == 0:
            num = num // 2
        else:
            num = 3 * num + 1
        steps += 1
    return steps


n = int(input())
print(collatz_steps(n))
