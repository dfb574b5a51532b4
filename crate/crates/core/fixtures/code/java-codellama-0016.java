import java.util.Scanner;

public class Main
{
    /**
     * Number of Collatz steps needed to reach one.
     */
    public static long collatzSteps(long num)
    {
        if (num <= 0)
        {
            return 0;
        }
        // Iterate the Collatz map until reaching one
        long steps = 0;
        while (num != 1)
        {
            if (num % 2 == 0)
            {
                num = num / 2;
            }
            else
            {
                num = 3 * num + 1;
            }
            steps++;
        }
        return steps;
    }

    public static void main(String[] args)
    {
        Scanner scanner = new Scanner(System.in);
        // Read the input
        long n = scanner.nextLong();

        long result = collatzSteps(n);
        // Output the answer
        System.out.println(result);
        scanner.close();
    }
}
